//! Ground sets, lattice-valued fuzzy sets, ground morphisms, and the
//! forward and backward powerset operators.

use crate::lattice::{QmlLattice, QmlMorphism};
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on the size of an enumerated function space.
pub const FN_SPACE_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum GroundError {
    #[error("ground set has no points")]
    EmptyPointSet,
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("table has the wrong shape: expected {expected} entries")]
    BadShape { expected: usize },
    #[error("value index {got} out of range for a lattice of size {size}")]
    ValueOutOfRange { got: usize, size: usize },
    #[error("lattice-side morphism must run from the target lattice into the source lattice")]
    LatticeMismatch,
    #[error("structure lives on a different ground than expected")]
    GroundMismatch,
    #[error("function space has {size} elements, over the cap of {cap}")]
    FunctionSpaceTooLarge { size: u128, cap: usize },
    #[error("ground morphism composition requires matching middle ground")]
    CompositionMismatch,
}

/// A ground set: named points together with the value lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundSet {
    points: Vec<String>,
    lattice: Arc<QmlLattice>,
}

impl GroundSet {
    pub fn new(points: Vec<String>, lattice: Arc<QmlLattice>) -> Result<Self, GroundError> {
        if points.is_empty() {
            return Err(GroundError::EmptyPointSet);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(GroundError::DuplicatePoint(p.clone()));
            }
        }
        Ok(GroundSet { points, lattice })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn lattice(&self) -> &Arc<QmlLattice> {
        &self.lattice
    }

    pub fn fn_space(&self) -> Result<FnSpace, GroundError> {
        FnSpace::new(self.n_points(), self.lattice.size())
    }
}

/// Canonical enumeration of every map from an `n`-point set into a
/// `k`-element lattice.
///
/// The map sending point `i` to element `g_i` has index `Σ g_i · k^i`, so the
/// first declared point is the fastest-varying digit. Filter and topology
/// tables are keyed by this index everywhere.
#[derive(Debug, Clone)]
pub struct FnSpace {
    n: usize,
    k: usize,
    size: usize,
}

impl FnSpace {
    pub fn new(n: usize, k: usize) -> Result<Self, GroundError> {
        let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > FN_SPACE_CAP as u128 {
            return Err(GroundError::FunctionSpaceTooLarge {
                size,
                cap: FN_SPACE_CAP,
            });
        }
        Ok(FnSpace {
            n,
            k,
            size: size as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut values = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            values.push(idx % self.k);
            idx /= self.k;
        }
        values
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        debug_assert_eq!(values.len(), self.n);
        values
            .iter()
            .rev()
            .fold(0usize, |acc, &v| acc * self.k + v)
    }

    pub fn value_at(&self, idx: usize, point: usize) -> usize {
        (idx / self.k.pow(point as u32)) % self.k
    }

    pub fn constant(&self, value: usize) -> usize {
        (0..self.n).fold(0usize, |acc, _| acc * self.k + value)
    }

    /// Pointwise partial order inherited from the lattice.
    pub fn leq(&self, l: &QmlLattice, i: usize, j: usize) -> bool {
        (0..self.n).all(|p| l.leq(self.value_at(i, p), self.value_at(j, p)))
    }

    pub fn apply_pointwise(
        &self,
        i: usize,
        j: usize,
        mut op: impl FnMut(usize, usize) -> usize,
    ) -> usize {
        let mut values = Vec::with_capacity(self.n);
        for p in 0..self.n {
            values.push(op(self.value_at(i, p), self.value_at(j, p)));
        }
        self.encode(&values)
    }

    pub fn tensor(&self, l: &QmlLattice, i: usize, j: usize) -> usize {
        self.apply_pointwise(i, j, |a, b| l.tensor(a, b))
    }

    pub fn join(&self, l: &QmlLattice, i: usize, j: usize) -> usize {
        self.apply_pointwise(i, j, |a, b| l.join(a, b))
    }

    pub fn meet(&self, l: &QmlLattice, i: usize, j: usize) -> usize {
        self.apply_pointwise(i, j, |a, b| l.meet(a, b))
    }
}

/// A lattice-valued fuzzy set: one lattice element per point of its ground.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    ground: GroundSet,
    values: Vec<usize>,
}

impl FuzzySet {
    pub fn new(ground: GroundSet, values: Vec<usize>) -> Result<Self, GroundError> {
        if values.len() != ground.n_points() {
            return Err(GroundError::BadShape {
                expected: ground.n_points(),
            });
        }
        let size = ground.lattice().size();
        if let Some(&got) = values.iter().find(|&&v| v >= size) {
            return Err(GroundError::ValueOutOfRange { got, size });
        }
        Ok(FuzzySet { ground, values })
    }

    pub fn constant(ground: GroundSet, value: usize) -> Result<Self, GroundError> {
        let values = vec![value; ground.n_points()];
        FuzzySet::new(ground, values)
    }

    pub fn from_index(ground: GroundSet, idx: usize) -> Result<Self, GroundError> {
        let space = ground.fn_space()?;
        FuzzySet::new(ground, space.decode(idx))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value_at(&self, point: usize) -> usize {
        self.values[point]
    }

    pub fn index(&self) -> usize {
        let space = self.ground.fn_space().expect("existing set fits its space");
        space.encode(&self.values)
    }

    pub fn value_names(&self) -> Vec<String> {
        self.values
            .iter()
            .map(|&v| self.ground.lattice().element_name(v).to_string())
            .collect()
    }

    pub fn pointwise_leq(&self, other: &FuzzySet) -> Result<bool, GroundError> {
        if self.ground != other.ground {
            return Err(GroundError::GroundMismatch);
        }
        let l = self.ground.lattice();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| l.leq(a, b)))
    }
}

/// A ground morphism: a point map together with the lattice-side morphism in
/// its concrete direction (target lattice into source lattice).
#[derive(Debug, Clone, PartialEq)]
pub struct GroundMorphism {
    source: GroundSet,
    target: GroundSet,
    point_map: Vec<usize>,
    lattice_map: QmlMorphism,
}

impl GroundMorphism {
    pub fn check(
        source: GroundSet,
        target: GroundSet,
        point_map: Vec<usize>,
        lattice_map: QmlMorphism,
    ) -> Result<Self, GroundError> {
        if point_map.len() != source.n_points() {
            return Err(GroundError::BadShape {
                expected: source.n_points(),
            });
        }
        if let Some(&got) = point_map.iter().find(|&&y| y >= target.n_points()) {
            return Err(GroundError::ValueOutOfRange {
                got,
                size: target.n_points(),
            });
        }
        if lattice_map.source() != target.lattice() || lattice_map.target() != source.lattice() {
            return Err(GroundError::LatticeMismatch);
        }
        Ok(GroundMorphism {
            source,
            target,
            point_map,
            lattice_map,
        })
    }

    pub fn identity(ground: GroundSet) -> Self {
        GroundMorphism {
            source: ground.clone(),
            target: ground.clone(),
            point_map: (0..ground.n_points()).collect(),
            lattice_map: QmlMorphism::identity(ground.lattice().clone()),
        }
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn lattice_map(&self) -> &QmlMorphism {
        &self.lattice_map
    }

    pub fn is_onto(&self) -> bool {
        let mut seen = vec![false; self.target.n_points()];
        for &y in &self.point_map {
            seen[y] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.n_points()];
        for &y in &self.point_map {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// Fiber-wise join pushforward into the target point set, keeping the
    /// source lattice. Empty fibers get bottom.
    pub fn zadeh_forward(&self, a: &FuzzySet) -> Result<FuzzySet, GroundError> {
        if a.ground() != &self.source {
            return Err(GroundError::GroundMismatch);
        }
        let l = self.source.lattice();
        let values = (0..self.target.n_points())
            .map(|y| {
                l.join_all(
                    self.point_map
                        .iter()
                        .enumerate()
                        .filter(|&(_, &fy)| fy == y)
                        .map(|(x, _)| a.value_at(x)),
                )
            })
            .collect();
        let ground = GroundSet::new(self.target.points().to_vec(), l.clone())?;
        FuzzySet::new(ground, values)
    }

    /// Backward powerset operator: compose the lattice map after the fuzzy
    /// set after the point map.
    pub fn backward_powerset(&self, b: &FuzzySet) -> Result<FuzzySet, GroundError> {
        if b.ground() != &self.target {
            return Err(GroundError::GroundMismatch);
        }
        let values = self
            .point_map
            .iter()
            .map(|&y| self.lattice_map.apply(b.value_at(y)))
            .collect();
        FuzzySet::new(self.source.clone(), values)
    }

    /// Forward powerset operator, computed pointwise: the value at a target
    /// point is the meet of every target-lattice element whose image bounds
    /// the fiber join from above.
    pub fn forward_powerset(&self, a: &FuzzySet) -> Result<FuzzySet, GroundError> {
        let pushed = self.zadeh_forward(a)?;
        let src_l = self.source.lattice();
        let tgt_l = self.target.lattice();
        let values = (0..self.target.n_points())
            .map(|y| {
                let v = pushed.value_at(y);
                tgt_l.meet_all(
                    (0..tgt_l.size()).filter(|&beta| src_l.leq(v, self.lattice_map.apply(beta))),
                )
            })
            .collect();
        FuzzySet::new(self.target.clone(), values)
    }

    /// Component-wise composition: `other` after `self`.
    pub fn compose_then(&self, other: &GroundMorphism) -> Result<GroundMorphism, GroundError> {
        if other.source != self.target {
            return Err(GroundError::CompositionMismatch);
        }
        let point_map = self.point_map.iter().map(|&y| other.point_map[y]).collect();
        let lattice_map = self
            .lattice_map
            .compose_after(other.lattice_map())
            .map_err(|_| GroundError::CompositionMismatch)?;
        GroundMorphism::check(self.source.clone(), other.target.clone(), point_map, lattice_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn ground(points: &[&str], lattice: Arc<QmlLattice>) -> GroundSet {
        GroundSet::new(points.iter().map(|s| s.to_string()).collect(), lattice).unwrap()
    }

    #[test]
    fn empty_ground_rejected() {
        let err = GroundSet::new(vec![], bundled::bool2()).unwrap_err();
        assert_eq!(err, GroundError::EmptyPointSet);
    }

    #[test]
    fn canonical_enumeration_is_point_zero_fastest() {
        let space = FnSpace::new(2, 2).unwrap();
        assert_eq!(space.decode(0), vec![0, 0]);
        assert_eq!(space.decode(1), vec![1, 0]);
        assert_eq!(space.decode(2), vec![0, 1]);
        assert_eq!(space.decode(3), vec![1, 1]);
        for i in 0..4 {
            assert_eq!(space.encode(&space.decode(i)), i);
        }
    }

    #[test]
    fn zadeh_forward_identity_and_collapse() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y1", "y2"], b.clone());
        let id = GroundMorphism::identity(x.clone());
        let a = FuzzySet::new(x.clone(), vec![0, 1]).unwrap();
        assert_eq!(id.zadeh_forward(&a).unwrap().values(), a.values());

        // Constant map onto y1: fiber join at y1, empty fiber (bottom) at y2.
        let gm = GroundMorphism::check(
            x.clone(),
            y.clone(),
            vec![0, 0],
            QmlMorphism::identity(b.clone()),
        )
        .unwrap();
        assert_eq!(gm.zadeh_forward(&a).unwrap().values(), &[1, 0]);

        let c3 = bundled::chain3();
        let x3 = ground(&["x1", "x2"], c3.clone());
        let y3 = ground(&["y1", "y2"], c3.clone());
        let gm3 = GroundMorphism::check(x3.clone(), y3, vec![0, 0], QmlMorphism::identity(c3))
            .unwrap();
        let a3 = FuzzySet::new(x3, vec![1, 2]).unwrap();
        assert_eq!(gm3.zadeh_forward(&a3).unwrap().values(), &[2, 0]);
    }

    #[test]
    fn backward_powerset_unfolds_composition() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let x = ground(&["x1", "x2"], c3.clone());
        let y = ground(&["y1", "y2"], b.clone());
        // Lattice map runs from the target lattice (BOOL) into the source
        // lattice (CHAIN3): 0 ↦ 0, 1 ↦ 1.
        let phi = QmlMorphism::check(b.clone(), c3.clone(), vec![0, 2]).unwrap();
        let gm = GroundMorphism::check(x, y.clone(), vec![1, 0], phi).unwrap();
        let bset = FuzzySet::new(y, vec![1, 0]).unwrap();
        assert_eq!(gm.backward_powerset(&bset).unwrap().values(), &[0, 2]);
    }

    #[test]
    fn forward_powerset_picks_least_cover() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let x = ground(&["x"], c3.clone());
        let y = ground(&["y"], b.clone());
        let phi = QmlMorphism::check(b, c3, vec![0, 2]).unwrap();
        let gm = GroundMorphism::check(x.clone(), y, vec![0], phi).unwrap();
        let a = FuzzySet::new(x, vec![1]).unwrap();
        // Smallest Boolean element covering m is 1.
        assert_eq!(gm.forward_powerset(&a).unwrap().values(), &[1]);
    }

    #[test]
    fn forward_powerset_of_bottom_is_bottom() {
        let c3 = bundled::chain3();
        let x = ground(&["x1", "x2"], c3.clone());
        let gm = GroundMorphism::identity(x.clone());
        let zero = FuzzySet::constant(x, 0).unwrap();
        assert_eq!(gm.forward_powerset(&zero).unwrap().values(), &[0, 0]);
    }

    #[test]
    fn powerset_operators_form_an_adjoint_pair() {
        // Exhaustive over all fuzzy sets for a mixed-lattice ground morphism.
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let x = ground(&["x1", "x2"], c3.clone());
        let y = ground(&["y"], b.clone());
        let phi = QmlMorphism::check(b.clone(), c3.clone(), vec![0, 2]).unwrap();
        let gm = GroundMorphism::check(x.clone(), y.clone(), vec![0, 0], phi).unwrap();

        let src_space = x.fn_space().unwrap();
        let tgt_space = y.fn_space().unwrap();
        for ai in 0..src_space.len() {
            let a = FuzzySet::new(x.clone(), src_space.decode(ai)).unwrap();
            let fwd = gm.forward_powerset(&a).unwrap();
            for bi in 0..tgt_space.len() {
                let bset = FuzzySet::new(y.clone(), tgt_space.decode(bi)).unwrap();
                let lhs = fwd.pointwise_leq(&bset).unwrap();
                let back = gm.backward_powerset(&bset).unwrap();
                let rhs = a.pointwise_leq(&back).unwrap();
                assert_eq!(lhs, rhs, "adjointness failed at a={ai}, b={bi}");
            }
        }
    }

    #[test]
    fn forward_powerset_matches_co_adjoint_composition() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let x = ground(&["x1", "x2"], c3.clone());
        let y = ground(&["y"], b.clone());
        let phi = QmlMorphism::check(b, c3, vec![0, 2]).unwrap();
        let gm = GroundMorphism::check(x.clone(), y, vec![0, 0], phi).unwrap();
        let ladj = gm.lattice_map().co_adjoint().unwrap();

        let space = x.fn_space().unwrap();
        for ai in 0..space.len() {
            let a = FuzzySet::new(x.clone(), space.decode(ai)).unwrap();
            let via_def = gm.forward_powerset(&a).unwrap();
            let pushed = gm.zadeh_forward(&a).unwrap();
            let via_adj: Vec<usize> = pushed.values().iter().map(|&v| ladj[v]).collect();
            assert_eq!(via_def.values(), via_adj.as_slice());
        }
    }
}
