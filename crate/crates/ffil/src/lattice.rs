//! Finite complete quasi-monoidal lattices and their table-driven morphisms.
//!
//! A [`QmlLattice`] is a finite carrier with an order table, a binary tensor
//! table, and cached meet/join tables. A [`QmlMorphism`] is the concrete
//! direction of a lattice-side morphism: a map that preserves finite joins,
//! the tensor, top and bottom. Both are validated eagerly; holding a value of
//! either type is proof that its axioms hold.

use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// Axiom set enforced on the tensor of a candidate lattice.
///
/// `Weak` requires isotonicity in both arguments and `top ⊗ top = top`.
/// `TopUnit` additionally requires top to be a two-sided unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TensorLaws {
    #[default]
    Weak,
    TopUnit,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum LatticeError {
    #[error("element list is empty")]
    EmptyCarrier,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("`{table}` table must be {expected}x{expected}")]
    BadShape { table: &'static str, expected: usize },
    #[error("not a partial order ({law}): witnesses {witness:?}")]
    NotAPartialOrder {
        law: &'static str,
        witness: Vec<String>,
    },
    #[error("not a lattice: `{a}` and `{b}` have no {bound}")]
    NotALattice {
        a: String,
        b: String,
        bound: &'static str,
    },
    #[error("tensor not isotone in its {argument} argument: raising `{lo}` to `{hi}` against `{other}` sends `{value_lo}` to `{value_hi}`")]
    TensorNotIsotone {
        argument: &'static str,
        lo: String,
        hi: String,
        other: String,
        value_lo: String,
        value_hi: String,
    },
    #[error("top is not idempotent under tensor: top ⊗ top = `{got}`")]
    TopNotIdempotentUnderTensor { got: String },
    #[error("top is not a {side} tensor unit at `{at}`: got `{got}`")]
    TopNotUnit {
        side: &'static str,
        at: String,
        got: String,
    },
    #[error("not residuated: witnesses a=`{a}`, b=`{b}`, c=`{c}`")]
    NotResiduated { a: String, b: String, c: String },
}

/// A finite complete quasi-monoidal lattice.
///
/// `leq`, `tensor`, `meet` and `join` are `n*n` row-major tables over element
/// indices; `meet`/`join`/`top`/`bottom` are derived during validation.
#[derive(Debug, Clone, PartialEq)]
pub struct QmlLattice {
    elements: Vec<String>,
    leq: Vec<bool>,
    tensor: Vec<usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl QmlLattice {
    /// Validates a raw lattice description against the weak axiom set.
    pub fn check(
        elements: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<usize>>,
    ) -> Result<Self, LatticeError> {
        Self::check_with_laws(elements, leq, tensor, TensorLaws::Weak)
    }

    /// Validates a raw lattice description, with the tensor laws selectable.
    pub fn check_with_laws(
        elements: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<usize>>,
        laws: TensorLaws,
    ) -> Result<Self, LatticeError> {
        let n = elements.len();
        if n == 0 {
            return Err(LatticeError::EmptyCarrier);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(LatticeError::DuplicateElement(e.clone()));
            }
        }
        let leq = flatten(&leq, n, "leq", |_| true)?;
        let tensor = flatten(&tensor, n, "tensor", |&v| v < n)?;

        let name = |i: usize| elements[i].clone();
        let le = |a: usize, b: usize| leq[a * n + b];

        // Partial order laws, scanned in canonical index order.
        for a in 0..n {
            if !le(a, a) {
                return Err(LatticeError::NotAPartialOrder {
                    law: "reflexivity",
                    witness: vec![name(a)],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(LatticeError::NotAPartialOrder {
                        law: "antisymmetry",
                        witness: vec![name(a), name(b)],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(LatticeError::NotAPartialOrder {
                            law: "transitivity",
                            witness: vec![name(a), name(b), name(c)],
                        });
                    }
                }
            }
        }

        // Every pair needs a greatest lower bound and a least upper bound.
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                match bound(n, &leq, a, b, true) {
                    Some(m) => meet[a * n + b] = m,
                    None => {
                        return Err(LatticeError::NotALattice {
                            a: name(a),
                            b: name(b),
                            bound: "meet",
                        })
                    }
                }
                match bound(n, &leq, a, b, false) {
                    Some(j) => join[a * n + b] = j,
                    None => {
                        return Err(LatticeError::NotALattice {
                            a: name(a),
                            b: name(b),
                            bound: "join",
                        })
                    }
                }
            }
        }
        let mut top = 0;
        let mut bottom = 0;
        for a in 1..n {
            top = join[top * n + a];
            bottom = meet[bottom * n + a];
        }

        // Tensor isotone in each argument.
        for lo in 0..n {
            for hi in 0..n {
                if !le(lo, hi) {
                    continue;
                }
                for other in 0..n {
                    let (vl, vh) = (tensor[lo * n + other], tensor[hi * n + other]);
                    if !le(vl, vh) {
                        return Err(LatticeError::TensorNotIsotone {
                            argument: "first",
                            lo: name(lo),
                            hi: name(hi),
                            other: name(other),
                            value_lo: name(vl),
                            value_hi: name(vh),
                        });
                    }
                    let (vl, vh) = (tensor[other * n + lo], tensor[other * n + hi]);
                    if !le(vl, vh) {
                        return Err(LatticeError::TensorNotIsotone {
                            argument: "second",
                            lo: name(lo),
                            hi: name(hi),
                            other: name(other),
                            value_lo: name(vl),
                            value_hi: name(vh),
                        });
                    }
                }
            }
        }

        let tt = tensor[top * n + top];
        if tt != top {
            return Err(LatticeError::TopNotIdempotentUnderTensor { got: name(tt) });
        }
        if laws == TensorLaws::TopUnit {
            for a in 0..n {
                let got = tensor[top * n + a];
                if got != a {
                    return Err(LatticeError::TopNotUnit {
                        side: "left",
                        at: name(a),
                        got: name(got),
                    });
                }
                let got = tensor[a * n + top];
                if got != a {
                    return Err(LatticeError::TopNotUnit {
                        side: "right",
                        at: name(a),
                        got: name(got),
                    });
                }
            }
        }

        Ok(QmlLattice {
            elements,
            leq,
            tensor,
            meet,
            join,
            top,
            bottom,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.size() + b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Join of an arbitrary finite family; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary finite family; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn leq_rows(&self) -> Vec<Vec<bool>> {
        (0..self.size())
            .map(|a| (0..self.size()).map(|b| self.leq(a, b)).collect())
            .collect()
    }

    pub fn tensor_rows(&self) -> Vec<Vec<usize>> {
        (0..self.size())
            .map(|a| (0..self.size()).map(|b| self.tensor(a, b)).collect())
            .collect()
    }
}

fn flatten<T: Copy>(
    rows: &[Vec<T>],
    n: usize,
    table: &'static str,
    ok: impl Fn(&T) -> bool,
) -> Result<Vec<T>, LatticeError> {
    let bad = LatticeError::BadShape { table, expected: n };
    if rows.len() != n {
        return Err(bad);
    }
    let mut flat = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(bad);
        }
        for v in row {
            if !ok(v) {
                return Err(bad);
            }
            flat.push(*v);
        }
    }
    Ok(flat)
}

/// Greatest lower bound (`lower = true`) or least upper bound of a pair,
/// if one exists.
fn bound(n: usize, leq: &[bool], a: usize, b: usize, lower: bool) -> Option<usize> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let bounds: Vec<usize> = (0..n)
        .filter(|&c| {
            if lower {
                le(c, a) && le(c, b)
            } else {
                le(a, c) && le(b, c)
            }
        })
        .collect();
    bounds
        .iter()
        .copied()
        .find(|&m| bounds.iter().all(|&c| if lower { le(c, m) } else { le(m, c) }))
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum MorphismError {
    #[error("map must assign one target element to each of the {expected} source elements")]
    BadShape { expected: usize },
    #[error("bottom not preserved: got `{got}`")]
    BottomNotPreserved { got: String },
    #[error("join not preserved at (`{b1}`, `{b2}`): expected `{expected}`, got `{got}`")]
    JoinNotPreserved {
        b1: String,
        b2: String,
        expected: String,
        got: String,
    },
    #[error("tensor not preserved at (`{b1}`, `{b2}`): expected `{expected}`, got `{got}`")]
    TensorNotPreserved {
        b1: String,
        b2: String,
        expected: String,
        got: String,
    },
    #[error("top not preserved: got `{got}`")]
    TopNotPreserved { got: String },
    #[error("meets not preserved at (`{b1}`, `{b2}`): the co-adjoint is undefined")]
    MeetsNotPreserved { b1: String, b2: String },
    #[error("morphism composition requires matching middle lattice")]
    CompositionMismatch,
}

/// The concrete direction of a lattice-side morphism: a total map from the
/// source carrier into the target carrier preserving finite joins, the
/// tensor, top and bottom.
#[derive(Debug, Clone, PartialEq)]
pub struct QmlMorphism {
    source: Arc<QmlLattice>,
    target: Arc<QmlLattice>,
    map: Vec<usize>,
}

impl QmlMorphism {
    pub fn check(
        source: Arc<QmlLattice>,
        target: Arc<QmlLattice>,
        map: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        let n = source.size();
        if map.len() != n || map.iter().any(|&v| v >= target.size()) {
            return Err(MorphismError::BadShape { expected: n });
        }
        let got = map[source.bottom()];
        if got != target.bottom() {
            return Err(MorphismError::BottomNotPreserved {
                got: target.element_name(got).into(),
            });
        }
        for b1 in 0..n {
            for b2 in 0..n {
                let expected = map[source.join(b1, b2)];
                let got = target.join(map[b1], map[b2]);
                if expected != got {
                    return Err(MorphismError::JoinNotPreserved {
                        b1: source.element_name(b1).into(),
                        b2: source.element_name(b2).into(),
                        expected: target.element_name(expected).into(),
                        got: target.element_name(got).into(),
                    });
                }
            }
        }
        for b1 in 0..n {
            for b2 in 0..n {
                let expected = map[source.tensor(b1, b2)];
                let got = target.tensor(map[b1], map[b2]);
                if expected != got {
                    return Err(MorphismError::TensorNotPreserved {
                        b1: source.element_name(b1).into(),
                        b2: source.element_name(b2).into(),
                        expected: target.element_name(expected).into(),
                        got: target.element_name(got).into(),
                    });
                }
            }
        }
        let got = map[source.top()];
        if got != target.top() {
            return Err(MorphismError::TopNotPreserved {
                got: target.element_name(got).into(),
            });
        }
        Ok(QmlMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(lattice: Arc<QmlLattice>) -> Self {
        let map = (0..lattice.size()).collect();
        QmlMorphism {
            source: lattice.clone(),
            target: lattice,
            map,
        }
    }

    pub fn source(&self) -> &Arc<QmlLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QmlLattice> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, b: usize) -> usize {
        self.map[b]
    }

    /// Right Galois adjoint, as a table from the target carrier back into the
    /// source carrier. Exists for every validated morphism: the adjoint value
    /// at `a` is the join of everything mapped at or below `a`.
    pub fn right_adjoint(&self) -> Vec<usize> {
        (0..self.target.size())
            .map(|a| {
                self.source.join_all(
                    (0..self.source.size()).filter(|&b| self.target.leq(self.map[b], a)),
                )
            })
            .collect()
    }

    /// Left (co-)adjoint, defined only when the map preserves binary meets.
    /// The value at `a` is the meet of everything mapped at or above `a`.
    pub fn co_adjoint(&self) -> Result<Vec<usize>, MorphismError> {
        let n = self.source.size();
        for b1 in 0..n {
            for b2 in 0..n {
                let expected = self.map[self.source.meet(b1, b2)];
                let got = self.target.meet(self.map[b1], self.map[b2]);
                if expected != got {
                    return Err(MorphismError::MeetsNotPreserved {
                        b1: self.source.element_name(b1).into(),
                        b2: self.source.element_name(b2).into(),
                    });
                }
            }
        }
        Ok((0..self.target.size())
            .map(|a| {
                self.source
                    .meet_all((0..n).filter(|&b| self.target.leq(a, self.map[b])))
            })
            .collect())
    }

    /// Composition in the concrete direction: `self` after `other`.
    pub fn compose_after(&self, other: &QmlMorphism) -> Result<QmlMorphism, MorphismError> {
        if other.target != self.source {
            return Err(MorphismError::CompositionMismatch);
        }
        let map = other.map.iter().map(|&b| self.map[b]).collect();
        QmlMorphism::check(other.source.clone(), self.target.clone(), map)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        self.source.size() == self.target.size() && seen.iter().all(|&s| s)
    }

    /// Inverse table of a bijective morphism, revalidated from scratch.
    pub fn inverse(&self) -> Option<Result<QmlMorphism, MorphismError>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0usize; self.target.size()];
        for (b, &v) in self.map.iter().enumerate() {
            inv[v] = b;
        }
        Some(QmlMorphism::check(
            self.target.clone(),
            self.source.clone(),
            inv,
        ))
    }
}

/// All validated morphisms from `source` into `target`, in lexicographic
/// map order.
pub fn enumerate_qml_morphisms(
    source: &Arc<QmlLattice>,
    target: &Arc<QmlLattice>,
) -> Vec<QmlMorphism> {
    let n = source.size();
    let k = target.size();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if let Ok(m) = QmlMorphism::check(source.clone(), target.clone(), map.clone()) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Residuum table of a lattice: `at(a, b)` is the largest `c` with
/// `a ⊗ c ≤ b`. Construction verifies the residuation law on every triple.
#[derive(Debug, Clone, PartialEq)]
pub struct Residuum {
    n: usize,
    table: Vec<usize>,
}

impl Residuum {
    pub fn new(l: &QmlLattice) -> Result<Self, LatticeError> {
        let n = l.size();
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = l.join_all((0..n).filter(|&c| l.leq(l.tensor(a, c), b)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let law_lhs = l.leq(l.tensor(a, c), b);
                    let law_rhs = l.leq(c, table[a * n + b]);
                    if law_lhs != law_rhs {
                        return Err(LatticeError::NotResiduated {
                            a: l.element_name(a).into(),
                            b: l.element_name(b).into(),
                            c: l.element_name(c).into(),
                        });
                    }
                }
            }
        }
        Ok(Residuum { n, table })
    }

    pub fn at(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn bundled_lattices_validate() {
        for l in [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ] {
            assert!(l.size() >= 2);
            assert_eq!(l.tensor(l.top(), l.top()), l.top());
        }
    }

    #[test]
    fn broken_chain3_tensor_reports_top_axiom() {
        // Gödel chain with 1 ⊗ 1 redirected to m.
        let leq = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let tensor = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 1]];
        let err = QmlLattice::check(
            vec!["0".into(), "m".into(), "1".into()],
            leq,
            tensor,
        )
        .unwrap_err();
        assert_eq!(
            err,
            LatticeError::TopNotIdempotentUnderTensor { got: "m".into() }
        );
    }

    #[test]
    fn non_poset_rejected() {
        let leq = vec![vec![true, true], vec![true, true]];
        let tensor = vec![vec![0, 0], vec![0, 1]];
        let err = QmlLattice::check(vec!["0".into(), "1".into()], leq, tensor).unwrap_err();
        assert!(matches!(
            err,
            LatticeError::NotAPartialOrder {
                law: "antisymmetry",
                ..
            }
        ));
    }

    #[test]
    fn poset_without_joins_rejected() {
        // bottom < a,b < x,y < top with x,y incomparable: a and b have no join.
        let names: Vec<String> = ["bot", "a", "b", "x", "y", "top"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let pairs: &[(usize, usize)] = &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 5),
            (4, 5),
        ];
        let mut leq = vec![vec![false; 6]; 6];
        for i in 0..6 {
            leq[i][i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        let tensor: Vec<Vec<usize>> = (0..6).map(|_| vec![0; 6]).collect();
        let err = QmlLattice::check(names, leq, tensor).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                a: "a".into(),
                b: "b".into(),
                bound: "join"
            }
        );
    }

    #[test]
    fn meet_join_tables_satisfy_universal_property() {
        for l in [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ] {
            let n = l.size();
            for a in 0..n {
                for b in 0..n {
                    let m = l.meet(a, b);
                    let j = l.join(a, b);
                    for c in 0..n {
                        assert_eq!(l.leq(c, m), l.leq(c, a) && l.leq(c, b));
                        assert_eq!(l.leq(j, c), l.leq(a, c) && l.leq(b, c));
                    }
                }
            }
            assert!((0..n).all(|a| l.leq(a, l.top()) && l.leq(l.bottom(), a)));
        }
    }

    #[test]
    fn top_unit_mode() {
        let (e, leq, t) = bundled::luk3_tables();
        assert!(QmlLattice::check_with_laws(e, leq, t, TensorLaws::TopUnit).is_ok());

        let (e, leq, t) = bundled::chain3_constant_top_tables();
        let err = QmlLattice::check_with_laws(e, leq, t, TensorLaws::TopUnit).unwrap_err();
        assert!(matches!(err, LatticeError::TopNotUnit { .. }));
    }

    #[test]
    fn identity_morphism_validates() {
        let c3 = bundled::chain3();
        let m = QmlMorphism::check(c3.clone(), c3.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(m.right_adjoint(), vec![0, 1, 2]);
        assert_eq!(m.co_adjoint().unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn bool_to_chain3_adjoints_match_hand_computation() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        // 0 ↦ 0, 1 ↦ 1 into the chain.
        let m = QmlMorphism::check(b, c3, vec![0, 2]).unwrap();
        assert_eq!(m.right_adjoint(), vec![0, 0, 1]);
        assert_eq!(m.co_adjoint().unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn top_not_preserved_reported() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let err = QmlMorphism::check(b, c3, vec![0, 1]).unwrap_err();
        assert_eq!(err, MorphismError::TopNotPreserved { got: "m".into() });
    }

    #[test]
    fn galois_laws_hold_for_every_enumerated_morphism() {
        let pool = [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ];
        for src in &pool {
            for tgt in &pool {
                for m in enumerate_qml_morphisms(src, tgt) {
                    let radj = m.right_adjoint();
                    for b in 0..src.size() {
                        for a in 0..tgt.size() {
                            assert_eq!(
                                tgt.leq(m.apply(b), a),
                                src.leq(b, radj[a]),
                                "right adjoint law"
                            );
                        }
                    }
                    if let Ok(ladj) = m.co_adjoint() {
                        for a in 0..tgt.size() {
                            for b in 0..src.size() {
                                assert_eq!(
                                    src.leq(ladj[a], b),
                                    tgt.leq(a, m.apply(b)),
                                    "co-adjoint law"
                                );
                            }
                            // Unit and counit forms.
                            assert!(tgt.leq(a, m.apply(ladj[a])));
                        }
                        for b in 0..src.size() {
                            assert!(src.leq(ladj[m.apply(b)], b));
                        }
                    }
                    for a in 0..tgt.size() {
                        assert!(tgt.leq(m.apply(radj[a]), a), "counit of right adjoint");
                    }
                    for b in 0..src.size() {
                        assert!(src.leq(b, radj[m.apply(b)]), "unit of right adjoint");
                    }
                }
            }
        }
    }

    #[test]
    fn meets_not_preserved_detected() {
        let src = bundled::diamond_trivial_tensor();
        let tgt = bundled::lifted_diamond_trivial_tensor();
        // 0 ↦ 0, a ↦ u, b ↦ v, 1 ↦ 1 preserves joins and the trivial tensor
        // but sends the meet of a and b (bottom) away from u ∧ v = w.
        let m = QmlMorphism::check(src, tgt, vec![0, 2, 3, 4]).unwrap();
        let err = m.co_adjoint().unwrap_err();
        assert_eq!(
            err,
            MorphismError::MeetsNotPreserved {
                b1: "a".into(),
                b2: "b".into()
            }
        );
    }

    #[test]
    fn bijective_morphism_inverse_validates() {
        let pool = [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ];
        for src in &pool {
            for tgt in &pool {
                for m in enumerate_qml_morphisms(src, tgt) {
                    if let Some(inv) = m.inverse() {
                        assert!(inv.is_ok(), "inverse of a bijective morphism failed: {inv:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn residuum_tables_match_hand_computation() {
        let b = bundled::bool2();
        let r = Residuum::new(&b).unwrap();
        assert_eq!(r.at(1, 0), 0);
        assert_eq!(r.at(0, 0), 1);

        let c3 = bundled::chain3();
        let r = Residuum::new(&c3).unwrap();
        assert_eq!(r.at(1, 0), 0); // m → 0

        let l3 = bundled::luk3();
        let r = Residuum::new(&l3).unwrap();
        assert_eq!(r.at(1, 0), 1); // h → 0 = h
        assert_eq!(r.at(2, 1), 1); // 1 → h = h
    }

    #[test]
    fn residuum_unit_laws() {
        for l in [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ] {
            let r = Residuum::new(&l).unwrap();
            let n = l.size();
            for a in 0..n {
                for b in 0..n {
                    assert!(l.leq(l.tensor(a, r.at(a, b)), b));
                    assert!(l.leq(b, r.at(a, l.tensor(a, b))));
                }
            }
        }
    }

    #[test]
    fn constant_top_tensor_is_not_residuated() {
        let l = bundled::chain3_constant_top();
        let err = Residuum::new(&l).unwrap_err();
        assert!(matches!(err, LatticeError::NotResiduated { .. }));
    }
}
