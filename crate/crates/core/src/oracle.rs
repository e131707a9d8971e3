//! Exhaustive reference checks over the full state space (n <= STATE_LIMIT).
//!
//! One controlled step from x reaches exactly the coset F(x) + span{e_i : i in U},
//! so states are grouped into classes by their bits outside U and searches run
//! over classes.

use std::collections::VecDeque;

use crate::error::{BnError, Result};
use crate::gf2::Gf2Vector;
use crate::model::{BooleanNetwork, ControlNodeSet, ControlScheme};

pub const STATE_LIMIT: usize = 20;

const NONE: u32 = u32::MAX;

/// Precomputed image table F(x) for every packed state.
pub struct StateTable {
    n: usize,
    image: Vec<u32>,
}

impl StateTable {
    pub fn new(bn: &BooleanNetwork) -> Result<Self> {
        let n = bn.n();
        if n > STATE_LIMIT {
            return Err(BnError::OracleLimit { n, limit: STATE_LIMIT });
        }
        let image = (0..1u64 << n).map(|x| bn.step_bits(x) as u32).collect();
        Ok(StateTable { n, image })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    fn graph(&self, u: &ControlNodeSet) -> Result<ClassGraph<'_>> {
        for &i in u.members() {
            if i > self.n {
                return Err(BnError::IndexOutOfRange { index: i, n: self.n });
            }
        }
        let umask = u.members().iter().fold(0u32, |m, &i| m | 1 << (i - 1));
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        Ok(ClassGraph { table: self, umask, keep: full & !umask })
    }
}

struct ClassGraph<'a> {
    table: &'a StateTable,
    umask: u32,
    keep: u32,
}

impl ClassGraph<'_> {
    fn key(&self, x: u32) -> u32 {
        self.table.image(x) & self.keep
    }

    fn members(&self, c: u32) -> impl Iterator<Item = u32> + '_ {
        let umask = self.umask;
        let mut sub = Some(0u32);
        std::iter::from_fn(move || {
            let s = sub?;
            sub = if s == umask { None } else { Some((s.wrapping_sub(umask)) & umask) };
            Some(c | s)
        })
    }

    fn classes(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.table.n).filter(move |c| c & self.umask == 0)
    }

    /// Arrival times of every class from the classes in `start` (which are at time 1).
    /// `witness[c]` is a state in the previous class whose key is c.
    fn bfs(&self, start: u32, from: u32) -> (Vec<u32>, Vec<u32>) {
        let size = 1usize << self.table.n;
        let mut dist = vec![NONE; size];
        let mut witness = vec![NONE; size];
        let mut queue = VecDeque::new();
        dist[start as usize] = 1;
        witness[start as usize] = from;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            let d = dist[c as usize];
            for x in self.members(c) {
                let nk = self.key(x);
                if dist[nk as usize] == NONE {
                    dist[nk as usize] = d + 1;
                    witness[nk as usize] = x;
                    queue.push_back(nk);
                }
            }
        }
        (dist, witness)
    }

    fn strongly_connected(&self) -> bool {
        let size = 1usize << self.table.n;
        let (fwd, _) = self.bfs(self.key(0), 0);
        if self.classes().any(|c| fwd[c as usize] == NONE) {
            return false;
        }
        // Reverse reachability towards class 0.
        let mut incoming: Vec<Vec<u32>> = vec![Vec::new(); size];
        for x in 0..size as u32 {
            incoming[self.key(x) as usize].push(x & self.keep);
        }
        let mut seen = vec![false; size];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &p in &incoming[c as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        self.classes().all(|c| seen[c as usize])
    }
}

fn pack(v: &Gf2Vector, n: usize) -> Result<u32> {
    if v.len() != n {
        return Err(BnError::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(v.to_u64() as u32)
}

/// Every a can be driven to every b != a in finitely many steps.
pub fn is_controllable_bruteforce(bn: &BooleanNetwork, u: &ControlNodeSet) -> Result<bool> {
    is_controllable_with(&StateTable::new(bn)?, u)
}

pub fn is_controllable_with(table: &StateTable, u: &ControlNodeSet) -> Result<bool> {
    Ok(table.graph(u)?.strongly_connected())
}

/// Smallest controllable U with |U| <= max_size, first in lexicographic order among ties.
pub fn min_control_set_bruteforce(bn: &BooleanNetwork, max_size: usize) -> Result<Option<ControlNodeSet>> {
    let table = StateTable::new(bn)?;
    let n = bn.n();
    for size in 0..=max_size.min(n) {
        let mut combo: Vec<usize> = (1..=size).collect();
        loop {
            let u = ControlNodeSet::new(n, combo.iter().copied())?;
            if is_controllable_with(&table, &u)? {
                return Ok(Some(u));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - (k - 1 - i) {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A scheme of minimum length driving a to b; empty when a == b.
pub fn shortest_drive(bn: &BooleanNetwork, u: &ControlNodeSet, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    let table = StateTable::new(bn)?;
    let n = bn.n();
    let (a, b) = (pack(a, n)?, pack(b, n)?);
    if a == b {
        return Ok(ControlScheme::new(Vec::new()));
    }
    let g = table.graph(u)?;
    let (dist, witness) = g.bfs(g.key(a), a);
    let t = dist[(b & g.keep) as usize];
    if t == NONE {
        return Err(BnError::Unreachable);
    }
    let mut path = vec![b];
    let mut x = b;
    for _ in 0..t {
        x = witness[(x & g.keep) as usize];
        path.push(x);
    }
    path.reverse();
    debug_assert_eq!(path[0], a);
    let signals = path
        .windows(2)
        .map(|w| Gf2Vector::from_u64(n, (w[1] ^ table.image(w[0])) as u64))
        .collect();
    Ok(ControlScheme::new(signals))
}

/// Largest shortest-drive length over all pairs a != b, or None if some pair is unreachable.
pub fn max_drive_distance(bn: &BooleanNetwork, u: &ControlNodeSet) -> Result<Option<usize>> {
    let table = StateTable::new(bn)?;
    let g = table.graph(u)?;
    let size = 1usize << bn.n();
    let mut done = vec![false; size];
    let mut worst = 0usize;
    for a in 0..size as u32 {
        let start = g.key(a);
        // Distances depend only on the start class, except that a itself is excluded.
        let own = a & g.keep;
        let needs_own = g.umask != 0;
        if done[start as usize] && needs_own {
            continue;
        }
        let (dist, _) = g.bfs(start, a);
        for c in g.classes() {
            if c == own && !needs_own {
                continue;
            }
            let d = dist[c as usize];
            if d == NONE {
                return Ok(None);
            }
            worst = worst.max(d as usize);
        }
        done[start as usize] = true;
    }
    Ok(Some(worst))
}
