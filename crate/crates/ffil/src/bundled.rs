//! Built-in lattices used by the random suite, the shipped instance
//! documents, and the test oracles.

use crate::lattice::QmlLattice;
use std::sync::Arc;

type Tables = (Vec<String>, Vec<Vec<bool>>, Vec<Vec<usize>>);

fn names(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Chain tables from a list of element names in increasing order and a
/// tensor given on rank indices.
fn chain_tables(items: &[&str], tensor: impl Fn(usize, usize) -> usize) -> Tables {
    let n = items.len();
    let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
    let tensor = (0..n).map(|a| (0..n).map(|b| tensor(a, b)).collect()).collect();
    (names(items), leq, tensor)
}

/// The two-element Boolean lattice with meet tensor.
pub fn bool2() -> Arc<QmlLattice> {
    let (e, leq, t) = chain_tables(&["0", "1"], |a, b| a.min(b));
    Arc::new(QmlLattice::check(e, leq, t).expect("bool2 is a valid lattice"))
}

/// Three-element chain 0 < m < 1 with the minimum (Gödel) tensor.
pub fn chain3() -> Arc<QmlLattice> {
    let (e, leq, t) = chain_tables(&["0", "m", "1"], |a, b| a.min(b));
    Arc::new(QmlLattice::check(e, leq, t).expect("chain3 is a valid lattice"))
}

/// Three-element chain 0 < h < 1 with the Łukasiewicz tensor
/// `max(0, a + b - 1)` on ranks scaled by a half.
pub fn luk3() -> Arc<QmlLattice> {
    let (e, leq, t) = luk3_tables();
    Arc::new(QmlLattice::check(e, leq, t).expect("luk3 is a valid lattice"))
}

pub fn luk3_tables() -> Tables {
    chain_tables(&["0", "h", "1"], |a, b| (a + b).saturating_sub(2))
}

/// Four-element Boolean square 0 < a, b < 1 with incomparable middles and
/// meet tensor.
pub fn diamond() -> Arc<QmlLattice> {
    let e = names(&["0", "a", "b", "1"]);
    // Order as pairs of bits: 0 = (0,0), a = (1,0), b = (0,1), 1 = (1,1).
    let bits = [(0u8, 0u8), (1, 0), (0, 1), (1, 1)];
    let idx = |p: (u8, u8)| bits.iter().position(|&q| q == p).unwrap();
    let leq = bits
        .iter()
        .map(|&(x1, y1)| bits.iter().map(|&(x2, y2)| x1 <= x2 && y1 <= y2).collect())
        .collect();
    let tensor = bits
        .iter()
        .map(|&(x1, y1)| {
            bits.iter()
                .map(|&(x2, y2)| idx((x1.min(x2), y1.min(y2))))
                .collect()
        })
        .collect();
    Arc::new(QmlLattice::check(e, leq, tensor).expect("diamond is a valid lattice"))
}

/// The four lattices every random suite draws from.
pub fn suite_pool() -> Vec<(&'static str, Arc<QmlLattice>)> {
    vec![
        ("BOOL", bool2()),
        ("CHAIN3", chain3()),
        ("LUK3", luk3()),
        ("DIAMOND", diamond()),
    ]
}

// The remaining constructors are deliberately exotic fixtures: valid
// quasi-monoidal lattices on which familiar extra laws fail.

pub fn chain3_constant_top_tables() -> Tables {
    chain_tables(&["0", "m", "1"], |_, _| 2)
}

/// Three-element chain whose tensor is constantly top. Not residuated and
/// top is not a unit.
pub fn chain3_constant_top() -> Arc<QmlLattice> {
    let (e, leq, t) = chain3_constant_top_tables();
    Arc::new(QmlLattice::check(e, leq, t).expect("constant-top chain is a valid lattice"))
}

/// Diamond carrier whose tensor collapses to bottom except at top ⊗ top.
pub fn diamond_trivial_tensor() -> Arc<QmlLattice> {
    let base = diamond();
    let n = base.size();
    let tensor = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| if a == base.top() && b == base.top() { base.top() } else { base.bottom() })
                .collect()
        })
        .collect();
    Arc::new(
        QmlLattice::check(base.elements().to_vec(), base.leq_rows(), tensor)
            .expect("trivial-tensor diamond is a valid lattice"),
    )
}

/// The diamond w < u, v < 1 lifted over a new bottom 0, with the tensor
/// collapsed to bottom except at top ⊗ top. The meet of the incomparable
/// pair sits strictly above bottom, which no four-element lattice allows.
pub fn lifted_diamond_trivial_tensor() -> Arc<QmlLattice> {
    let e = names(&["0", "w", "u", "v", "1"]);
    let pairs: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)];
    let mut leq = vec![vec![false; 5]; 5];
    for i in 0..5 {
        leq[i][i] = true;
    }
    for &(a, b) in pairs {
        leq[a][b] = true;
    }
    let tensor = (0..5)
        .map(|a| (0..5).map(|b| if a == 4 && b == 4 { 4 } else { 0 }).collect())
        .collect();
    Arc::new(QmlLattice::check(e, leq, tensor).expect("lifted diamond is a valid lattice"))
}
