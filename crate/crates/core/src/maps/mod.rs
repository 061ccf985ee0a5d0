//! Single-valued maps between digital images.

mod afpp;
mod retraction;
mod shy;

use std::fmt;
use std::sync::Arc;

pub use afpp::{approximate_fixed_point, has_afpp, AfppOutcome};
pub use retraction::{exists_retraction, is_retraction};
pub use shy::{is_shy, shy_violation, ShyViolation};

use crate::adjacency::ProductKind;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::space::Space;

/// A total function between the point sets of two spaces.
#[derive(Clone)]
pub struct DigitalMap {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    table: Vec<usize>,
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && *self.domain == *other.domain && *self.codomain == *other.codomain
    }
}

impl Eq for DigitalMap {}

pub(crate) fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl DigitalMap {
    /// From a table of codomain indices, one per domain index.
    pub fn from_table(domain: Arc<Space>, codomain: Arc<Space>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::InvalidArgument(format!(
                "map table has {} entries for {} domain points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(i) = table.iter().position(|&v| v >= codomain.len()) {
            return Err(Error::ValueOutsideCodomain {
                point: domain.point(i).to_string(),
                value: table[i].to_string(),
            });
        }
        Ok(DigitalMap { domain, codomain, table })
    }

    pub(crate) fn from_table_unchecked(domain: Arc<Space>, codomain: Arc<Space>, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), domain.len());
        DigitalMap { domain, codomain, table }
    }

    /// From explicit point pairs; every domain point must appear exactly once.
    pub fn from_pairs(
        domain: Arc<Space>,
        codomain: Arc<Space>,
        pairs: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            let i = domain.require(&x)?;
            let j = codomain
                .index_of(&y)
                .ok_or_else(|| Error::ValueOutsideCodomain { point: x.to_string(), value: y.to_string() })?;
            if table[i] != usize::MAX {
                return Err(Error::DuplicatePoint(x.to_string()));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::PartialMap(domain.point(i).to_string()));
        }
        Ok(DigitalMap { domain, codomain, table })
    }

    /// From a function on points.
    pub fn from_fn(domain: Arc<Space>, codomain: Arc<Space>, mut f: impl FnMut(&Point) -> Point) -> Result<Self> {
        let pairs: Vec<(Point, Point)> = domain.points().iter().map(|p| (p.clone(), f(p))).collect();
        DigitalMap::from_pairs(domain, codomain, pairs)
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let table = (0..space.len()).collect();
        DigitalMap { domain: space.clone(), codomain: space, table }
    }

    pub fn constant(domain: Arc<Space>, codomain: Arc<Space>, value: &Point) -> Result<Self> {
        let j = codomain.require(value)?;
        let table = vec![j; domain.len()];
        Ok(DigitalMap { domain, codomain, table })
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Value at a domain index, as a codomain index.
    pub fn at(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, p: &Point) -> Result<&Point> {
        Ok(self.codomain.point(self.table[self.domain.require(p)?]))
    }

    /// `(x, f(x))` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.table.iter().enumerate().map(|(i, &j)| (self.domain.point(i), self.codomain.point(j)))
    }

    /// An adjacent pair whose images are neither equal nor adjacent.
    pub fn discontinuity(&self) -> Option<(Point, Point)> {
        self.discontinuity_indices().map(|(i, j)| (self.domain.point(i).clone(), self.domain.point(j).clone()))
    }

    pub(crate) fn discontinuity_indices(&self) -> Option<(usize, usize)> {
        for i in 0..self.domain.len() {
            for &j in self.domain.neighbours(i) {
                if j > i && !self.codomain.close(self.table[i], self.table[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuity_indices().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &j in &self.table {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    /// Two distinct points of one closed neighbourhood with the same image.
    pub fn local_collision(&self) -> Option<(Point, Point)> {
        for x in 0..self.domain.len() {
            let nbhd = self.domain.closed_neighbourhood(x);
            for (a, &p) in nbhd.iter().enumerate() {
                for &q in &nbhd[a + 1..] {
                    if self.table[p] == self.table[q] {
                        return Some((self.domain.point(p).clone(), self.domain.point(q).clone()));
                    }
                }
            }
        }
        None
    }

    /// Injective on every closed neighbourhood. Continuity is not required.
    pub fn is_locally_one_to_one(&self) -> bool {
        self.local_collision().is_none()
    }

    pub fn inverse(&self) -> Option<DigitalMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.codomain.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(DigitalMap { domain: self.codomain.clone(), codomain: self.domain.clone(), table })
    }

    /// Continuous bijection with continuous inverse.
    pub fn is_isomorphism(&self) -> bool {
        self.is_continuous() && self.inverse().is_some_and(|g| g.is_continuous())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &DigitalMap) -> Result<DigitalMap> {
        if !same_space(&self.codomain, &g.domain) {
            return Err(Error::SpaceMismatch("codomain of the first map is not the domain of the second".into()));
        }
        let table = self.table.iter().map(|&j| g.table[j]).collect();
        Ok(DigitalMap { domain: self.domain.clone(), codomain: g.codomain.clone(), table })
    }

    /// Restriction to a subspace of the domain.
    pub fn restrict(&self, subspace: Arc<Space>) -> Result<DigitalMap> {
        let table = subspace.points().iter().map(|p| Ok(self.table[self.domain.require(p)?])).collect::<Result<_>>()?;
        Ok(DigitalMap { domain: subspace, codomain: self.codomain.clone(), table })
    }

    /// `(x_1, ..., x_v) -> (f_1(x_1), ..., f_v(x_v))` between product spaces.
    pub fn product(maps: &[&DigitalMap], kind: ProductKind) -> Result<DigitalMap> {
        let doms: Vec<&Space> = maps.iter().map(|m| m.domain.as_ref()).collect();
        let cods: Vec<&Space> = maps.iter().map(|m| m.codomain.as_ref()).collect();
        let domain = Space::product(&doms, kind)?.into_arc();
        let codomain = Space::product(&cods, kind)?.into_arc();
        Ok(DigitalMap::product_into(maps, domain, codomain))
    }

    /// Product map into prebuilt product spaces (must match the factors).
    pub(crate) fn product_into(maps: &[&DigitalMap], domain: Arc<Space>, codomain: Arc<Space>) -> DigitalMap {
        let mut table = vec![0usize];
        for m in maps {
            let k = m.codomain.len();
            table = table.iter().flat_map(|&prefix| m.table.iter().map(move |&j| prefix * k + j)).collect();
        }
        DigitalMap { domain, codomain, table }
    }

    /// Projection of a product onto factor `index`.
    pub fn projection(factors: &[Arc<Space>], kind: ProductKind, index: usize) -> Result<DigitalMap> {
        if index >= factors.len() {
            return Err(Error::FactorIndex { index, factors: factors.len() });
        }
        let refs: Vec<&Space> = factors.iter().map(|f| f.as_ref()).collect();
        let domain = Space::product(&refs, kind)?.into_arc();
        let stride: usize = factors[index + 1..].iter().map(|f| f.len()).product();
        let k = factors[index].len();
        let table = (0..domain.len()).map(|i| (i / stride) % k).collect();
        Ok(DigitalMap { domain, codomain: factors[index].clone(), table })
    }

    /// `x -> (b_1, ..., x, ..., b_v)`, with `basepoints[j]` in factor `j`
    /// (the entry at `index` is ignored).
    pub fn injection(
        factors: &[Arc<Space>],
        kind: ProductKind,
        index: usize,
        basepoints: &[Point],
    ) -> Result<DigitalMap> {
        if index >= factors.len() {
            return Err(Error::FactorIndex { index, factors: factors.len() });
        }
        if basepoints.len() != factors.len() {
            return Err(Error::InvalidArgument("one basepoint per factor is required".into()));
        }
        let base: Vec<usize> = factors.iter().zip(basepoints).map(|(f, b)| f.require(b)).collect::<Result<_>>()?;
        let refs: Vec<&Space> = factors.iter().map(|f| f.as_ref()).collect();
        let codomain = Space::product(&refs, kind)?.into_arc();
        let table = (0..factors[index].len())
            .map(|x| {
                let mut idx = base.clone();
                idx[index] = x;
                product_index(factors, &idx)
            })
            .collect();
        Ok(DigitalMap { domain: factors[index].clone(), codomain, table })
    }
}

/// Index in a row-major product of the point with the given factor indices.
pub(crate) fn product_index(factors: &[Arc<Space>], idx: &[usize]) -> usize {
    factors.iter().zip(idx).fold(0, |acc, (f, &i)| acc * f.len() + i)
}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DigitalImage;

    fn sq(spec: &str) -> Arc<Space> {
        Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1]).unwrap(), spec).unwrap().into_arc()
    }

    #[test]
    fn tensor_product_of_identity_and_constant() {
        let i = Space::interval(0, 1).unwrap().into_arc();
        let id = DigitalMap::identity(i.clone());
        let zero = DigitalMap::constant(i.clone(), i.clone(), &Point::from([0])).unwrap();
        assert!(id.is_continuous() && zero.is_continuous());
        let f = DigitalMap::product(&[&id, &zero], ProductKind::Tensor).unwrap();
        assert_eq!(f.discontinuity(), Some((Point::from([0, 0]), Point::from([1, 1]))));
        let g = DigitalMap::product(&[&id, &zero], ProductKind::Cartesian).unwrap();
        assert!(g.is_continuous());
    }

    #[test]
    fn projections_and_injections() {
        let i = Space::interval(0, 2).unwrap().into_arc();
        let factors = vec![i.clone(), i.clone()];
        let p2 = DigitalMap::projection(&factors, ProductKind::Lex, 1).unwrap();
        assert_eq!(p2.discontinuity(), Some((Point::from([0, 0]), Point::from([1, 2]))));
        let p1 = DigitalMap::projection(&factors, ProductKind::Lex, 0).unwrap();
        assert!(p1.is_continuous());
        let base = vec![Point::from([0]), Point::from([1])];
        let inj = DigitalMap::injection(&factors, ProductKind::Tensor, 0, &base).unwrap();
        assert_eq!(inj.apply(&Point::from([2])).unwrap(), &Point::from([2, 1]));
        assert!(!inj.is_continuous());
        assert!(DigitalMap::injection(&factors, ProductKind::Cartesian, 1, &base).unwrap().is_continuous());
    }

    #[test]
    fn isomorphisms() {
        let x = sq("c1");
        let rot =
            DigitalMap::from_fn(x.clone(), x.clone(), |p| Point::from([p.coords()[1], 1 - p.coords()[0]])).unwrap();
        assert!(rot.is_isomorphism());
        let y = sq("c2");
        let id = DigitalMap::from_fn(x.clone(), y.clone(), |p| p.clone()).unwrap();
        assert!(id.is_continuous() && id.is_bijective() && !id.is_isomorphism());
        assert!(id.is_locally_one_to_one());
        let fold = DigitalMap::from_fn(x.clone(), x, |p| Point::from([p.coords()[0], 0])).unwrap();
        assert!(fold.is_continuous() && !fold.is_locally_one_to_one());
    }
}
