//! A digital image together with an adjacency, with precomputed neighbours.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::adjacency::{Adjacency, AdjacencySpec, ProductKind};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point};

/// The pair `(X, κ)`. Points are addressed by their index in the sorted image.
#[derive(Clone)]
pub struct Space {
    image: DigitalImage,
    adjacency: Adjacency,
    neighbours: Vec<Vec<usize>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.adjacency == other.adjacency
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(image: DigitalImage, adjacency: Adjacency) -> Result<Self> {
        if image.dim() != adjacency.dim() {
            return Err(Error::DimensionMismatch { expected: image.dim(), found: adjacency.dim() });
        }
        let pts = image.points();
        let mut neighbours = vec![Vec::new(); pts.len()];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if adjacency.adjacent_unchecked(&pts[i], &pts[j]) {
                    neighbours[i].push(j);
                    neighbours[j].push(i);
                }
            }
        }
        for n in &mut neighbours {
            n.sort_unstable();
        }
        Ok(Space { image, adjacency, neighbours })
    }

    /// Resolves `spec` on the image dimension.
    pub fn with_spec(image: DigitalImage, spec: &str) -> Result<Self> {
        let adjacency = AdjacencySpec::parse(spec)?.resolve(image.dim(), None)?;
        Space::new(image, adjacency)
    }

    /// One-dimensional image with `c_1`.
    pub fn line(values: &[i64]) -> Result<Self> {
        Space::new(DigitalImage::from_ints(values)?, Adjacency::cu(1, 1)?)
    }

    /// `[lo, hi]` with `c_1`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Space::line(&(lo..=hi).collect::<Vec<_>>())
    }

    /// Product of spaces under `kind`. Points are ordered row-major, so the
    /// point with factor indices `(i_1, ..., i_v)` has index
    /// `((i_1 * |X_2| + i_2) * |X_3| + ...)`.
    pub fn product(factors: &[&Space], kind: ProductKind) -> Result<Self> {
        let images: Vec<&DigitalImage> = factors.iter().map(|f| &f.image).collect();
        let adjs: Vec<&Adjacency> = factors.iter().map(|f| &f.adjacency).collect();
        Space::new(DigitalImage::product(&images)?, Adjacency::product(kind, &adjs)?)
    }

    /// The subspace on the given points, with the same adjacency.
    pub fn subspace(&self, subset: &DigitalImage) -> Result<Self> {
        if let Some(p) = subset.points().iter().find(|p| !self.image.contains(p)) {
            return Err(Error::PointNotInImage(p.to_string()));
        }
        Space::new(subset.clone(), self.adjacency.clone())
    }

    pub fn image(&self) -> &DigitalImage {
        &self.image
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.image.dim()
    }

    pub fn points(&self) -> &[Point] {
        self.image.points()
    }

    pub fn point(&self, index: usize) -> &Point {
        self.image.point(index)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.image.index_of(p)
    }

    pub(crate) fn require(&self, p: &Point) -> Result<usize> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        self.index_of(p).ok_or_else(|| Error::PointNotInImage(p.to_string()))
    }

    /// Sorted indices adjacent to `i`.
    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbours[i].binary_search(&j).is_ok()
    }

    /// Equal or adjacent.
    pub fn close(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent(i, j)
    }

    /// Closed neighbourhood of `i`, sorted.
    pub fn closed_neighbourhood(&self, i: usize) -> Vec<usize> {
        let mut out = self.neighbours[i].clone();
        let at = out.binary_search(&i).unwrap_err();
        out.insert(at, i);
        out
    }

    /// Neighbourhood of a point; `closed` includes the point itself.
    pub fn neighbourhood(&self, p: &Point, closed: bool) -> Result<Vec<Point>> {
        let i = self.require(p)?;
        let idx = if closed { self.closed_neighbourhood(i) } else { self.neighbours[i].clone() };
        Ok(idx.into_iter().map(|j| self.point(j).clone()).collect())
    }

    /// Number of adjacent unordered pairs.
    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_adjacent_pair(&self) -> bool {
        self.neighbours.iter().any(|n| !n.is_empty())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut sets = DisjointSets::new(self.len());
        for (i, ns) in self.neighbours.iter().enumerate() {
            for &j in ns {
                if j > i {
                    sets.union(i, j);
                }
            }
        }
        sets.blocks()
    }

    /// Components as point lists.
    pub fn component_points(&self) -> Vec<Vec<Point>> {
        self.components().into_iter().map(|c| c.into_iter().map(|i| self.point(i).clone()).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.subset_connected(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Whether the given index set (nonempty) is connected in the induced subgraph.
    pub fn subset_connected(&self, subset: &[usize]) -> bool {
        let Some(&start) = subset.first() else { return true };
        let mut inside = vec![false; self.len()];
        for &i in subset {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &self.neighbours[i] {
                if inside[j] && !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    /// Whether some point of `a` equals or is adjacent to some point of `b`.
    pub fn index_sets_adjacent(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().any(|&i| b.iter().any(|&j| self.close(i, j)))
    }

    /// Breadth-first shortest path; among equal-length paths the one whose
    /// index sequence is lexicographically least.
    pub fn find_path_indices(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        // Distances from the target let us walk forward greedily.
        let mut dist = vec![usize::MAX; self.len()];
        dist[to] = 0;
        let mut queue = VecDeque::from([to]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbours[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        if dist[from] == usize::MAX {
            return None;
        }
        let mut path = vec![from];
        let mut at = from;
        while at != to {
            at = *self.neighbours[at].iter().find(|&&j| dist[j] + 1 == dist[at]).expect("distance decreases");
            path.push(at);
        }
        Some(path)
    }

    /// Path between two points as a point list.
    pub fn find_path(&self, a: &Point, b: &Point) -> Result<Option<Vec<Point>>> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        Ok(self.find_path_indices(i, j).map(|p| p.into_iter().map(|k| self.point(k).clone()).collect()))
    }

    pub fn into_arc(self) -> Arc<Space> {
        Arc::new(self)
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.image, self.adjacency)
    }
}

/// Neighbourhood of `x` within `domain` under `adjacency`.
pub fn neighborhood(adjacency: &Adjacency, domain: &DigitalImage, x: &Point, closed: bool) -> Result<Vec<Point>> {
    if x.dim() != adjacency.dim() || domain.dim() != adjacency.dim() {
        return Err(Error::DimensionMismatch { expected: adjacency.dim(), found: x.dim() });
    }
    Ok(domain.points().iter().filter(|q| (closed && *q == x) || adjacency.adjacent_unchecked(x, q)).cloned().collect())
}

/// Whether some point of `a` equals or is adjacent to some point of `b`.
pub fn sets_adjacent(a: &[Point], b: &[Point], adjacency: &Adjacency) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("sets_adjacent needs nonempty sets".into()));
    }
    for p in a.iter().chain(b) {
        if p.dim() != adjacency.dim() {
            return Err(Error::DimensionMismatch { expected: adjacency.dim(), found: p.dim() });
        }
    }
    Ok(a.iter().any(|p| b.iter().any(|q| p == q || adjacency.adjacent_unchecked(p, q))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_paths() {
        let s = Space::line(&[0, 1, 2, 5, 6]).unwrap();
        assert_eq!(s.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(s.find_path_indices(0, 2), Some(vec![0, 1, 2]));
        assert_eq!(s.find_path_indices(0, 4), None);
        assert!(!s.is_connected());
        assert!(s.subset_connected(&[3, 4]));
        assert!(!s.subset_connected(&[1, 3]));
    }

    #[test]
    fn lexicographic_tie_break() {
        let s = Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1]).unwrap(), "c1").unwrap();
        let path = s.find_path(&Point::from([0, 0]), &Point::from([1, 1])).unwrap().unwrap();
        assert_eq!(path, vec![Point::from([0, 0]), Point::from([0, 1]), Point::from([1, 1])]);
    }

    #[test]
    fn neighbourhoods() {
        let a = Adjacency::cu(1, 2).unwrap();
        let w = DigitalImage::window(&[-1, -1], &[1, 1]).unwrap();
        let n = neighborhood(&a, &w, &Point::from([0, 0]), false).unwrap();
        assert_eq!(n.len(), 4);
        let n = neighborhood(&a, &w, &Point::from([0, 0]), true).unwrap();
        assert_eq!(n.len(), 5);
        assert!(sets_adjacent(&[Point::from([0, 0])], &[Point::from([0, 1])], &a).unwrap());
        assert!(!sets_adjacent(&[Point::from([0, 0])], &[Point::from([1, 1])], &a).unwrap());
        assert!(sets_adjacent(&[], &[Point::from([1, 1])], &a).is_err());
    }
}
