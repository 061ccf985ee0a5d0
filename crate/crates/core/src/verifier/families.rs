//! Deterministic pools of small images, maps and subsets.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjacency::AdjacencySpec;
use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point};
use crate::maps::DigitalMap;
use crate::search::continuous_tables;
use crate::space::Space;

/// Bounds for generated images. Images are distinct up to graph isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceFamily {
    pub max_points: usize,
    pub max_dim: usize,
    /// Adjacency specs tried on every candidate point set, e.g. `c1`, `c2`.
    pub adjacencies: Vec<String>,
    /// Shuffles the enumeration order; the set of instances does not depend on it.
    pub seed: u64,
}

impl Default for InstanceFamily {
    fn default() -> Self {
        InstanceFamily { max_points: 3, max_dim: 2, adjacencies: vec!["c1".into(), "c2".into()], seed: 0 }
    }
}

impl InstanceFamily {
    /// Representatives of every adjacency graph realised within the bounds.
    pub fn images(&self) -> Result<Vec<Arc<Space>>> {
        let mut out = self.enumerate()?;
        out.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed));
        Ok(out)
    }

    /// Smaller images first, one-dimensional ones before the others.
    fn enumerate(&self) -> Result<Vec<Arc<Space>>> {
        if self.max_points == 0 || self.max_points > 5 {
            return Err(Error::InvalidArgument("max_points must be between 1 and 5".into()));
        }
        if self.max_dim == 0 || self.max_dim > 3 {
            return Err(Error::InvalidArgument("max_dim must be between 1 and 3".into()));
        }
        let specs =
            self.adjacencies.iter().map(|s| AdjacencySpec::parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for size in 1..=self.max_points {
            for dim in 1..=self.max_dim {
                let window = window(dim, self.max_points);
                for subset in window.points().iter().cloned().combinations(size) {
                    let image = DigitalImage::new(subset)?;
                    for spec in &specs {
                        let Ok(adj) = spec.resolve(dim, None) else { continue };
                        let space = Space::new(image.clone(), adj)?;
                        if seen.insert(canonical_graph(&space)) {
                            out.push(space.into_arc());
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn window(dim: usize, points: usize) -> DigitalImage {
    let hi: Vec<i64> = match dim {
        1 => vec![2 * points as i64 - 2],
        2 => vec![3, 2],
        _ => vec![2, 2, 1],
    };
    DigitalImage::window(&vec![0; dim], &hi).expect("window is nonempty")
}

/// Smallest edge bitmask over all vertex orders, prefixed by the size.
pub(crate) fn canonical_graph(space: &Space) -> (usize, u64) {
    let n = space.len();
    let best = (0..n)
        .permutations(n)
        .map(|perm| {
            let mut bits = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    if space.adjacent(perm[i], perm[j]) {
                        bits |= 1 << (i * n + j);
                    }
                }
            }
            bits
        })
        .min()
        .unwrap_or(0);
    (n, best)
}

/// Graphs on at most `max_points` vertices, in generation order (smaller and
/// one-dimensional images first).
pub(crate) fn graph_pool(max_points: usize) -> &'static [Arc<Space>] {
    static POOL: OnceLock<Vec<Arc<Space>>> = OnceLock::new();
    let all = POOL.get_or_init(|| {
        InstanceFamily { max_points: 4, ..InstanceFamily::default() }.enumerate().expect("valid family")
    });
    let end = all.iter().position(|s| s.len() > max_points).unwrap_or(all.len());
    &all[..end]
}

/// Every function between two spaces, continuous or not.
pub(crate) fn all_tables(x: &Space, y: &Space) -> Vec<Vec<usize>> {
    (0..x.len()).map(|_| 0..y.len()).multi_cartesian_product().collect()
}

pub(crate) fn all_maps(x: &Arc<Space>, y: &Arc<Space>) -> Vec<DigitalMap> {
    if x.is_empty() {
        return Vec::new();
    }
    all_tables(x, y).into_iter().map(|t| DigitalMap::from_table_unchecked(x.clone(), y.clone(), t)).collect()
}

pub(crate) fn continuous_maps(x: &Arc<Space>, y: &Arc<Space>) -> Vec<DigitalMap> {
    continuous_tables(x, y).into_iter().map(|t| DigitalMap::from_table_unchecked(x.clone(), y.clone(), t)).collect()
}

pub(crate) fn surjections(x: &Arc<Space>, y: &Arc<Space>) -> Vec<DigitalMap> {
    all_maps(x, y).into_iter().filter(DigitalMap::is_surjective).collect()
}

/// Nonempty subsets of the image, by bitmask order.
pub(crate) fn subsets(space: &Space) -> Vec<DigitalImage> {
    let n = space.len();
    (1u32..1 << n)
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            space.image().restrict(&idx).expect("nonempty subset")
        })
        .collect()
}

/// Every nonempty-valued multivalued table from `x` to `y`.
pub(crate) fn multi_tables(x: &Space, y: &Space) -> Vec<Vec<Vec<usize>>> {
    let sets: Vec<Vec<usize>> =
        (1u32..1 << y.len()).map(|mask| (0..y.len()).filter(|&j| mask >> j & 1 == 1).collect()).collect();
    (0..x.len()).map(|_| sets.iter().cloned()).multi_cartesian_product().collect()
}

/// Domains for subdivision searches: small images whose embedding matters.
pub(crate) fn embedded_domains() -> Vec<Arc<Space>> {
    let line = |v: &[i64]| Space::line(v).expect("valid").into_arc();
    let diagonal =
        Space::with_spec(DigitalImage::new(vec![Point::from([0, 0]), Point::from([1, 1])]).expect("valid"), "c2")
            .expect("valid");
    vec![line(&[0]), line(&[0, 1]), line(&[0, 2]), diagonal.into_arc()]
}
