//! Lattice points, finite digital images and the `c_u` adjacencies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^n`, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Concatenates the coordinates of `parts` in order.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Point>) -> Result<Point> {
        let mut coords = Vec::new();
        for p in parts {
            coords.extend_from_slice(&p.0);
        }
        Point::new(coords)
    }

    /// Coordinates `offset..offset + len` as a point.
    pub fn block(&self, offset: usize, len: usize) -> Point {
        Point(self.0[offset..offset + len].to_vec())
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        assert!(N > 0, "a point needs at least one coordinate");
        Point(coords.to_vec())
    }
}

impl TryFrom<Vec<i64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<i64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `c_u` adjacency on raw coordinate slices of equal length.
pub(crate) fn cu_adjacent_coords(u: usize, p: &[i64], q: &[i64]) -> bool {
    let mut differing = 0;
    for (a, b) in p.iter().zip(q) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

/// Whether `p` and `q` are `c_u`-adjacent in `Z^n`.
pub fn cu_adjacent(u: usize, p: &Point, q: &Point) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if u == 0 || u > p.dim() {
        return Err(Error::InvalidCu { u, dim: p.dim() });
    }
    Ok(cu_adjacent_coords(u, p.coords(), q.coords()))
}

/// A nonempty finite subset of `Z^n`, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitalImage {
    dim: usize,
    points: Vec<Point>,
}

impl DigitalImage {
    /// Builds an image; rejects empty input, mixed dimensions and duplicates.
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        let dim = points.first().ok_or(Error::EmptyImage)?.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(DigitalImage { dim, points })
    }

    /// Like [`DigitalImage::new`] but silently drops duplicates.
    pub fn from_unsorted(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        points.sort();
        points.dedup();
        DigitalImage::new(points)
    }

    /// One-dimensional image from integers.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        DigitalImage::new(values.iter().map(|&v| Point(vec![v])))
    }

    /// The box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
    pub fn window(lo: &[i64], hi: &[i64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if lo.is_empty() {
            return Err(Error::EmptyPoint);
        }
        let mut points = vec![Vec::new()];
        for (&a, &b) in lo.iter().zip(hi) {
            if a > b {
                return Err(Error::InvalidInterval { lo: a, hi: b });
            }
            points = points
                .into_iter()
                .flat_map(|prefix| {
                    (a..=b).map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        DigitalImage::new(points.into_iter().map(Point))
    }

    /// Cartesian product of the point sets, coordinates concatenated.
    pub fn product(factors: &[&DigitalImage]) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::TooFewFactors(factors.len()));
        }
        let mut points: Vec<Vec<i64>> = vec![Vec::new()];
        for f in factors {
            let mut next = Vec::with_capacity(points.len() * f.len());
            for prefix in &points {
                for p in &f.points {
                    let mut q = prefix.clone();
                    q.extend_from_slice(p.coords());
                    next.push(q);
                }
            }
            points = next;
        }
        // Row-major order over sorted factors is already sorted.
        Ok(DigitalImage { dim: factors.iter().map(|f| f.dim).sum(), points: points.into_iter().map(Point).collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_subset_of(&self, other: &DigitalImage) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// The image restricted to the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        DigitalImage::from_unsorted(indices.iter().map(|&i| self.points[i].clone()))
    }
}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.points).finish()
    }
}

/// The integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerInterval {
    lo: i64,
    hi: i64,
}

impl IntegerInterval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(IntegerInterval { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_image(&self) -> DigitalImage {
        DigitalImage::from_ints(&(self.lo..=self.hi).collect::<Vec<_>>()).expect("interval is nonempty")
    }
}
