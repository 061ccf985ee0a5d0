//! Multivalued maps: each point goes to a nonempty set of points.

mod subdivision;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub(crate) use subdivision::all_generators;
pub use subdivision::{
    find_generator, induced_multimap, is_continuous_multimap, is_multivalued_retraction, refine_generator, subdivide,
    MultiContinuity, ScaledPoint, Subdivision,
};

use crate::adjacency::ProductKind;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::maps::DigitalMap;
use crate::space::Space;

/// A multivalued map between two spaces; value sets are sorted index lists.
#[derive(Clone)]
pub struct MultiMap {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    table: Vec<Vec<usize>>,
}

impl PartialEq for MultiMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && *self.domain == *other.domain && *self.codomain == *other.codomain
    }
}

impl Eq for MultiMap {}

/// Why a multivalued map fails to preserve connectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ConnectivityViolation {
    ValueSetDisconnected { x: Point },
    ValueSetsApart { x: Point, y: Point },
}

impl MultiMap {
    pub fn from_table(domain: Arc<Space>, codomain: Arc<Space>, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::InvalidArgument(format!(
                "multivalued table has {} entries for {} domain points",
                table.len(),
                domain.len()
            )));
        }
        let mut clean = Vec::with_capacity(table.len());
        for (i, mut set) in table.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::EmptyValueSet(domain.point(i).to_string()));
            }
            if let Some(&v) = set.iter().find(|&&v| v >= codomain.len()) {
                return Err(Error::ValueOutsideCodomain { point: domain.point(i).to_string(), value: v.to_string() });
            }
            clean.push(set);
        }
        Ok(MultiMap { domain, codomain, table: clean })
    }

    pub fn from_pairs(
        domain: Arc<Space>,
        codomain: Arc<Space>,
        pairs: impl IntoIterator<Item = (Point, Vec<Point>)>,
    ) -> Result<Self> {
        let mut table: Vec<Option<Vec<usize>>> = vec![None; domain.len()];
        for (x, ys) in pairs {
            let i = domain.require(&x)?;
            if table[i].is_some() {
                return Err(Error::DuplicatePoint(x.to_string()));
            }
            let set = ys
                .iter()
                .map(|y| {
                    codomain
                        .index_of(y)
                        .ok_or_else(|| Error::ValueOutsideCodomain { point: x.to_string(), value: y.to_string() })
                })
                .collect::<Result<Vec<_>>>()?;
            table[i] = Some(set);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::PartialMap(domain.point(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        MultiMap::from_table(domain, codomain, table)
    }

    /// The single-valued map seen as a multivalued one.
    pub fn from_map(f: &DigitalMap) -> Self {
        MultiMap {
            domain: f.domain().clone(),
            codomain: f.codomain().clone(),
            table: f.table().iter().map(|&j| vec![j]).collect(),
        }
    }

    /// `y -> f^{-1}(y)` for a surjection `f`.
    pub fn inverse_of(f: &DigitalMap) -> Result<Self> {
        let mut table = vec![Vec::new(); f.codomain().len()];
        for (i, &j) in f.table().iter().enumerate() {
            table[j].push(i);
        }
        MultiMap::from_table(f.codomain().clone(), f.domain().clone(), table)
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn values_at(&self, i: usize) -> &[usize] {
        &self.table[i]
    }

    pub fn values(&self, p: &Point) -> Result<Vec<Point>> {
        let i = self.domain.require(p)?;
        Ok(self.table[i].iter().map(|&j| self.codomain.point(j).clone()).collect())
    }

    pub fn is_single_valued(&self) -> bool {
        self.table.iter().all(|s| s.len() == 1)
    }

    fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.domain.len())
            .flat_map(move |i| self.domain.neighbours(i).iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    fn pair(&self, i: usize, j: usize) -> (Point, Point) {
        (self.domain.point(i).clone(), self.domain.point(j).clone())
    }

    /// An adjacent pair whose value sets are not adjacent.
    pub fn weak_violation(&self) -> Option<(Point, Point)> {
        self.adjacent_pairs()
            .find(|&(i, j)| !self.codomain.index_sets_adjacent(&self.table[i], &self.table[j]))
            .map(|(i, j)| self.pair(i, j))
    }

    pub fn has_weak_continuity(&self) -> bool {
        self.weak_violation().is_none()
    }

    /// An adjacent pair where some value has no equal-or-adjacent partner on the other side.
    pub fn strong_violation(&self) -> Option<(Point, Point)> {
        let covers = |a: &[usize], b: &[usize]| a.iter().all(|&p| b.iter().any(|&q| self.codomain.close(p, q)));
        self.adjacent_pairs()
            .find(|&(i, j)| !(covers(&self.table[i], &self.table[j]) && covers(&self.table[j], &self.table[i])))
            .map(|(i, j)| self.pair(i, j))
    }

    pub fn has_strong_continuity(&self) -> bool {
        self.strong_violation().is_none()
    }

    /// Checks connected value sets and adjacent value sets over adjacent points.
    pub fn connectivity_violation(&self) -> Option<ConnectivityViolation> {
        if let Some(i) = (0..self.domain.len()).find(|&i| !self.codomain.subset_connected(&self.table[i])) {
            return Some(ConnectivityViolation::ValueSetDisconnected { x: self.domain.point(i).clone() });
        }
        self.weak_violation().map(|(x, y)| ConnectivityViolation::ValueSetsApart { x, y })
    }

    pub fn is_connectivity_preserving(&self) -> bool {
        self.connectivity_violation().is_none()
    }

    /// Union of the value sets over a set of domain indices.
    pub fn image_of_indices(&self, subset: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = subset.iter().flat_map(|&i| self.table[i].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `x -> F_1(x_1) x ... x F_v(x_v)` between product spaces.
    pub fn product(maps: &[&MultiMap], kind: ProductKind) -> Result<MultiMap> {
        let doms: Vec<&Space> = maps.iter().map(|m| m.domain.as_ref()).collect();
        let cods: Vec<&Space> = maps.iter().map(|m| m.codomain.as_ref()).collect();
        let domain = Space::product(&doms, kind)?.into_arc();
        let codomain = Space::product(&cods, kind)?.into_arc();
        Ok(MultiMap::product_into(maps, domain, codomain))
    }

    /// Product into prebuilt product spaces (must match the factors).
    pub(crate) fn product_into(maps: &[&MultiMap], domain: Arc<Space>, codomain: Arc<Space>) -> MultiMap {
        let mut table: Vec<Vec<usize>> = vec![vec![0]];
        for m in maps {
            let k = m.codomain.len();
            table = table
                .iter()
                .flat_map(|prefix| {
                    m.table
                        .iter()
                        .map(move |set| prefix.iter().flat_map(|&a| set.iter().map(move |&b| a * k + b)).collect())
                })
                .collect();
        }
        // Row-major order keeps each product set sorted.
        MultiMap { domain, codomain, table }
    }
}

impl fmt::Debug for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, set) in self.table.iter().enumerate() {
            let pts: Vec<&Point> = set.iter().map(|&j| self.codomain.point(j)).collect();
            m.entry(self.domain.point(i), &pts);
        }
        m.finish()
    }
}

/// The four conditions that are equivalent for a continuous surjection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShyEquivalences {
    pub shy: bool,
    pub connected_preimages: bool,
    pub inverse_connectivity_preserving: bool,
    pub inverse_weak_with_connected_fibres: bool,
}

impl ShyEquivalences {
    pub fn agree(&self) -> bool {
        let v = [
            self.shy,
            self.connected_preimages,
            self.inverse_connectivity_preserving,
            self.inverse_weak_with_connected_fibres,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

/// Largest codomain for which connected subsets are enumerated.
pub const MAX_SUBSET_ENUMERATION: usize = 20;

/// Evaluates the four shy conditions for a continuous surjection. The
/// "connected preimages" condition enumerates every connected subset of the
/// codomain, so the codomain may have at most [`MAX_SUBSET_ENUMERATION`] points.
pub fn shy_equivalences(f: &DigitalMap) -> Result<ShyEquivalences> {
    if !f.is_continuous() || !f.is_surjective() {
        return Err(Error::InvalidArgument("shy equivalences need a continuous surjection".into()));
    }
    let cod = f.codomain();
    if cod.len() > MAX_SUBSET_ENUMERATION {
        return Err(Error::InvalidArgument(format!("codomain larger than {MAX_SUBSET_ENUMERATION} points")));
    }
    let inverse = MultiMap::inverse_of(f)?;
    let connected_preimages = (1u64..1 << cod.len()).all(|mask| {
        let subset: Vec<usize> = (0..cod.len()).filter(|&j| mask >> j & 1 == 1).collect();
        !cod.subset_connected(&subset) || f.domain().subset_connected(&inverse.image_of_indices(&subset))
    });
    let fibres_connected = (0..cod.len()).all(|j| f.domain().subset_connected(inverse.values_at(j)));
    Ok(ShyEquivalences {
        shy: crate::maps::is_shy(f),
        connected_preimages,
        inverse_connectivity_preserving: inverse.is_connectivity_preserving(),
        inverse_weak_with_connected_fibres: inverse.has_weak_continuity() && fibres_connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: i64) -> Point {
        Point::from([v])
    }

    #[test]
    fn weak_and_strong_examples() {
        let x = Space::interval(0, 1).unwrap().into_arc();
        let y = Space::interval(0, 2).unwrap().into_arc();
        let f = MultiMap::from_pairs(x.clone(), y.clone(), vec![(p(0), vec![p(0), p(2)]), (p(1), vec![p(1)])]).unwrap();
        assert!(f.has_weak_continuity() && f.has_strong_continuity() && !f.is_connectivity_preserving());
        let g = MultiMap::from_pairs(x, y, vec![(p(0), vec![p(0), p(1)]), (p(1), vec![p(2)])]).unwrap();
        assert!(g.has_weak_continuity());
        assert_eq!(g.strong_violation(), Some((p(0), p(1))));
    }

    #[test]
    fn product_values() {
        let x = Space::line(&[0]).unwrap().into_arc();
        let y = Space::line(&[0, 2]).unwrap().into_arc();
        let f = MultiMap::from_pairs(x.clone(), y.clone(), vec![(p(0), vec![p(0), p(2)])]).unwrap();
        let g = MultiMap::product(&[&f, &f], ProductKind::Cartesian).unwrap();
        assert_eq!(g.values(&Point::from([0, 0])).unwrap().len(), 4);
        assert!(MultiMap::from_table(x, y, vec![vec![]]).is_err());
    }

    #[test]
    fn shy_conditions_agree_on_a_collapse() {
        let x = Space::interval(0, 3).unwrap().into_arc();
        let y = Space::interval(0, 1).unwrap().into_arc();
        let f = DigitalMap::from_fn(x.clone(), y.clone(), |q| p(q.coords()[0] / 2)).unwrap();
        let e = shy_equivalences(&f).unwrap();
        assert!(e.shy && e.agree());
    }
}
