#![allow(dead_code)]

use bncontrol::families::Family;
use bncontrol::{BooleanNetwork, ControlNodeSet, Gf2Matrix, Gf2Vector, NodeRule};
use rand::Rng;

pub fn v(s: &str) -> Gf2Vector {
    Gf2Vector::parse(s).unwrap()
}

pub fn set(n: usize, m: &[usize]) -> ControlNodeSet {
    ControlNodeSet::new(n, m.iter().copied()).unwrap()
}

pub fn three_node_matrix() -> Gf2Matrix {
    Gf2Matrix::parse_rows(&["011", "111", "100"]).unwrap()
}

pub fn three_node() -> BooleanNetwork {
    BooleanNetwork::from_xor_matrix(&three_node_matrix()).unwrap()
}

/// 7-node 3-3 majority network.
pub fn seven_node() -> BooleanNetwork {
    let ins = [[2, 3, 4], [1, 2, 4], [1, 3, 4], [1, 2, 3], [5, 6, 7], [5, 6, 7], [5, 6, 7]];
    BooleanNetwork::new(ins.iter().map(|l| NodeRule::majority(l.to_vec())).collect()).unwrap()
}

/// 8-node 4-4 majority ring: x_i reads x_i, ..., x_{i+3}.
pub fn ring8() -> BooleanNetwork {
    BooleanNetwork::new((1..=8).map(|i| NodeRule::majority((0..4).map(|d| (i - 1 + d) % 8 + 1).collect())).collect())
        .unwrap()
}

pub struct ReferenceTable {
    pub family: Family,
    pub k: usize,
    pub m: usize,
    /// x(0), F(x(0)), x(1), ..., F(x(m-1)), x(m).
    pub rows: [&'static str; 9],
}

pub const TABLES: [ReferenceTable; 4] = [
    ReferenceTable {
        family: Family::MajorityOdd,
        k: 2,
        m: 4,
        rows: [
            "100100110101111000011001",
            "100110000000111111000111",
            "111000000000111111000111",
            "111000000111000000111111",
            "101001000111000000111111",
            "111111010110111000000000",
            "111111010110111000000000",
            "000000111111101001000111",
            "010100101111101001100111",
        ],
    },
    ReferenceTable {
        family: Family::MajorityEven,
        k: 2,
        m: 4,
        rows: [
            "00100110001001000001",
            "00000000000011101101",
            "00101000000011100101",
            "11010110100000011111",
            "00101100100000011111",
            "11111110100110100000",
            "11111100100010100000",
            "00000111110110111010",
            "11001101111010100010",
        ],
    },
    ReferenceTable {
        family: Family::Mtbi,
        k: 3,
        m: 4,
        rows: [
            "101101100001101010100110",
            "100110111111000000101010",
            "001011111111000000101010",
            "101010001011111111000000",
            "100101001011111111000000",
            "000000100101001011111111",
            "000000100101001011111111",
            "111111000000100101001011",
            "011100010000010101101011",
        ],
    },
    ReferenceTable {
        family: Family::Phi,
        k: 5,
        m: 4,
        rows: [
            "00100110001001000001",
            "00001001001100010010",
            "00011001001100010010",
            "10010000110010011000",
            "00000000110010011000",
            "11000111110001100100",
            "00000111110001100100",
            "00100111110000000011",
            "11001111110000000011",
        ],
    },
];

impl ReferenceTable {
    pub fn rows(&self) -> Vec<Gf2Vector> {
        self.rows.iter().map(|r| v(r)).collect()
    }

    pub fn a(&self) -> Gf2Vector {
        v(self.rows[0])
    }

    pub fn b(&self) -> Gf2Vector {
        v(self.rows[8])
    }
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> Gf2Vector {
    Gf2Vector::from_bits(&(0..n).map(|_| rng.gen::<bool>()).collect::<Vec<_>>())
}

pub fn random_matrix<R: Rng>(n: usize, density: f64, rng: &mut R) -> Gf2Matrix {
    let mut a = Gf2Matrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            a.set(i, j, rng.gen_bool(density));
        }
    }
    a
}

pub fn random_set<R: Rng>(n: usize, p: f64, rng: &mut R) -> ControlNodeSet {
    ControlNodeSet::new(n, (1..=n).filter(|_| rng.gen_bool(p))).unwrap()
}

/// Random network with every node a majority of `k` distinct random inputs.
pub fn random_k_in_majority<R: Rng>(n: usize, k: usize, rng: &mut R) -> BooleanNetwork {
    use rand::seq::index::sample;
    let rules = (0..n)
        .map(|_| NodeRule::majority(sample(rng, n, k).into_iter().map(|j| j + 1).collect()))
        .collect();
    BooleanNetwork::new(rules).unwrap()
}
