//! Adjacency specs, their grammar, and evaluation on points.
//!
//! A spec is either a `c_u` leaf or a product (`NP_u`, tensor, Cartesian,
//! lexicographic) over factor specs. Before a spec can be evaluated it must be
//! resolved against a dimension, which fixes how many coordinates each factor
//! owns.

mod parse;

use std::fmt;
use std::str::FromStr;

pub use parse::ParseError;

use crate::error::{Error, Result};
use crate::lattice::{cu_adjacent_coords, DigitalImage, Point};

/// How factor adjacencies combine into a product adjacency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// Between 1 and `u` factors adjacent, the others equal.
    Np(usize),
    /// Every factor adjacent.
    Tensor,
    /// Exactly one factor adjacent, the others equal.
    Cartesian,
    /// The first factor that differs is adjacent.
    Lex,
}

impl ProductKind {
    fn check_arity(self, factors: usize) -> Result<()> {
        if factors < 2 {
            return Err(Error::TooFewFactors(factors));
        }
        if let ProductKind::Np(u) = self {
            if u == 0 || u > factors {
                return Err(Error::InvalidNp { u, factors });
            }
        }
        Ok(())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(ProductKind::Tensor),
            "X" => Ok(ProductKind::Cartesian),
            "L" => Ok(ProductKind::Lex),
            _ => s
                .strip_prefix("NP")
                .and_then(|d| d.parse().ok())
                .filter(|&u: &usize| u >= 1)
                .map(ProductKind::Np)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown product kind `{s}`"))),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Np(u) => write!(f, "NP{u}"),
            ProductKind::Tensor => write!(f, "T"),
            ProductKind::Cartesian => write!(f, "X"),
            ProductKind::Lex => write!(f, "L"),
        }
    }
}

/// An unresolved adjacency expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AdjacencySpec {
    /// `c_u`, optionally pinned to a dimension.
    Cu {
        u: usize,
        dim: Option<usize>,
    },
    Product {
        kind: ProductKind,
        factors: Vec<AdjacencySpec>,
    },
}

impl AdjacencySpec {
    pub fn parse(src: &str) -> std::result::Result<Self, ParseError> {
        parse::parse(src)
    }

    pub fn cu(u: usize) -> Self {
        AdjacencySpec::Cu { u, dim: None }
    }

    pub fn cu_in(u: usize, dim: usize) -> Self {
        AdjacencySpec::Cu { u, dim: Some(dim) }
    }

    pub fn product(kind: ProductKind, factors: Vec<AdjacencySpec>) -> Result<Self> {
        kind.check_arity(factors.len())?;
        Ok(AdjacencySpec::Product { kind, factors })
    }

    /// Smallest dimension this spec can live on, and whether it is the only one.
    fn arity(&self) -> (usize, bool) {
        match self {
            AdjacencySpec::Cu { dim: Some(n), .. } => (*n, true),
            AdjacencySpec::Cu { u, dim: None } => (*u, false),
            AdjacencySpec::Product { factors, .. } => factors.iter().fold((0, true), |(m, fixed), f| {
                let (fm, ff) = f.arity();
                (m + fm, fixed && ff)
            }),
        }
    }

    /// Resolves the spec on `dim` coordinates.
    ///
    /// `split` gives the dimensions of the top-level factors. Without it the
    /// split must be forced: either every factor sits at its minimum, or only
    /// one factor has any freedom.
    pub fn resolve(&self, dim: usize, split: Option<&[usize]>) -> Result<Adjacency> {
        let root = match (self, split) {
            (_, None) => self.resolve_node(dim)?,
            (AdjacencySpec::Cu { .. }, Some(s)) if s == [dim] => self.resolve_node(dim)?,
            (AdjacencySpec::Product { kind, factors }, Some(s))
                if s.len() == factors.len() && s.iter().sum::<usize>() == dim =>
            {
                let mut blocks = Vec::new();
                let mut offset = 0;
                for (f, &n) in factors.iter().zip(s) {
                    blocks.push(Block { offset, len: n, node: f.resolve_node(n)? });
                    offset += n;
                }
                Node::Product { kind: *kind, blocks }
            }
            (_, Some(s)) => return Err(Error::BadSplit { spec: self.to_string(), split: s.to_vec(), dim }),
        };
        Ok(Adjacency { spec: self.clone(), root, dim })
    }

    fn resolve_node(&self, dim: usize) -> Result<Node> {
        match self {
            AdjacencySpec::Cu { u, dim: pinned } => {
                if let Some(n) = pinned {
                    if *n != dim {
                        return Err(Error::BadSplit { spec: self.to_string(), split: vec![dim], dim: *n });
                    }
                }
                if *u == 0 || *u > dim {
                    return Err(Error::InvalidCu { u: *u, dim });
                }
                Ok(Node::Cu { u: *u, dim })
            }
            AdjacencySpec::Product { kind, factors } => {
                kind.check_arity(factors.len())?;
                let arities: Vec<(usize, bool)> = factors.iter().map(AdjacencySpec::arity).collect();
                let min: usize = arities.iter().map(|a| a.0).sum();
                let flexible = arities.iter().filter(|a| !a.1).count();
                if min > dim {
                    return Err(Error::AmbiguousSplit { spec: self.to_string(), dim });
                }
                let dims: Vec<usize> = if min == dim {
                    arities.iter().map(|a| a.0).collect()
                } else if flexible == 1 {
                    arities.iter().map(|&(m, fixed)| if fixed { m } else { m + dim - min }).collect()
                } else {
                    return Err(Error::AmbiguousSplit { spec: self.to_string(), dim });
                };
                let mut blocks = Vec::new();
                let mut offset = 0;
                for (f, n) in factors.iter().zip(dims) {
                    blocks.push(Block { offset, len: n, node: f.resolve_node(n)? });
                    offset += n;
                }
                Ok(Node::Product { kind: *kind, blocks })
            }
        }
    }
}

impl FromStr for AdjacencySpec {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        AdjacencySpec::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Block {
    offset: usize,
    len: usize,
    node: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Cu { u: usize, dim: usize },
    Product { kind: ProductKind, blocks: Vec<Block> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Equal,
    Adjacent,
    Apart,
}

impl Node {
    fn adjacent(&self, p: &[i64], q: &[i64]) -> bool {
        match self {
            Node::Cu { u, .. } => cu_adjacent_coords(*u, p, q),
            Node::Product { kind, blocks } => {
                let relation = |b: &Block| {
                    let (x, y) = (&p[b.offset..b.offset + b.len], &q[b.offset..b.offset + b.len]);
                    if x == y {
                        Relation::Equal
                    } else if b.node.adjacent(x, y) {
                        Relation::Adjacent
                    } else {
                        Relation::Apart
                    }
                };
                match kind {
                    ProductKind::Tensor => blocks.iter().all(|b| relation(b) == Relation::Adjacent),
                    ProductKind::Cartesian | ProductKind::Np(_) => {
                        let limit = if let ProductKind::Np(u) = kind { *u } else { 1 };
                        let mut adjacent = 0;
                        for b in blocks {
                            match relation(b) {
                                Relation::Equal => {}
                                Relation::Adjacent => adjacent += 1,
                                Relation::Apart => return false,
                            }
                        }
                        adjacent >= 1 && adjacent <= limit
                    }
                    ProductKind::Lex => blocks
                        .iter()
                        .map(relation)
                        .find(|r| *r != Relation::Equal)
                        .is_some_and(|r| r == Relation::Adjacent),
                }
            }
        }
    }

    fn dim(&self) -> usize {
        match self {
            Node::Cu { dim, .. } => *dim,
            Node::Product { blocks, .. } => blocks.iter().map(|b| b.len).sum(),
        }
    }

    fn pinned(&self) -> AdjacencySpec {
        match self {
            Node::Cu { u, dim } => AdjacencySpec::cu_in(*u, *dim),
            Node::Product { kind, blocks } => {
                AdjacencySpec::Product { kind: *kind, factors: blocks.iter().map(|b| b.node.pinned()).collect() }
            }
        }
    }
}

/// A spec resolved on a fixed dimension, ready to answer adjacency queries.
#[derive(Clone, Debug)]
pub struct Adjacency {
    spec: AdjacencySpec,
    root: Node,
    dim: usize,
}

impl PartialEq for Adjacency {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl Eq for Adjacency {}

impl Adjacency {
    /// Parses and resolves in one step.
    pub fn parse(src: &str, dim: usize) -> Result<Self> {
        AdjacencySpec::parse(src)?.resolve(dim, None)
    }

    /// `c_u` on `Z^dim`.
    pub fn cu(u: usize, dim: usize) -> Result<Self> {
        AdjacencySpec::cu(u).resolve(dim, None)
    }

    /// Product of already resolved factor adjacencies.
    pub fn product(kind: ProductKind, factors: &[&Adjacency]) -> Result<Self> {
        kind.check_arity(factors.len())?;
        let mut blocks = Vec::new();
        let mut offset = 0;
        for f in factors {
            blocks.push(Block { offset, len: f.dim, node: f.root.clone() });
            offset += f.dim;
        }
        let spec = AdjacencySpec::Product { kind, factors: factors.iter().map(|f| f.spec.clone()).collect() };
        Ok(Adjacency { spec, root: Node::Product { kind, blocks }, dim: offset })
    }

    pub fn spec(&self) -> &AdjacencySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimensions of the top-level factors (`[dim]` for a `c_u` leaf).
    pub fn split(&self) -> Vec<usize> {
        match &self.root {
            Node::Cu { dim, .. } => vec![*dim],
            Node::Product { blocks, .. } => blocks.iter().map(|b| b.len).collect(),
        }
    }

    /// The top-level product kind, if any.
    pub fn kind(&self) -> Option<ProductKind> {
        match &self.root {
            Node::Cu { .. } => None,
            Node::Product { kind, .. } => Some(*kind),
        }
    }

    /// `u` when this is a plain `c_u` adjacency.
    pub fn cu_order(&self) -> Option<usize> {
        match self.root {
            Node::Cu { u, .. } => Some(u),
            Node::Product { .. } => None,
        }
    }

    /// The spec with every leaf pinned to its dimension.
    pub fn pinned_spec(&self) -> AdjacencySpec {
        self.root.pinned()
    }

    /// A spec text plus optional split that resolves back to this adjacency.
    pub fn describe(&self) -> (String, Option<Vec<usize>>) {
        if self.spec.resolve(self.dim, None).is_ok_and(|a| a == *self) {
            return (self.spec.to_string(), None);
        }
        let split = self.split();
        if self.spec.resolve(self.dim, Some(&split)).is_ok_and(|a| a == *self) {
            return (self.spec.to_string(), Some(split));
        }
        (self.pinned_spec().to_string(), None)
    }

    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        for x in [p, q] {
            if x.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
            }
        }
        Ok(self.adjacent_unchecked(p, q))
    }

    pub(crate) fn adjacent_unchecked(&self, p: &Point, q: &Point) -> bool {
        debug_assert_eq!(self.root.dim(), self.dim);
        self.root.adjacent(p.coords(), q.coords())
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

/// A pair of points adjacent under `stronger` but not under `weaker`, if any.
pub fn domination_witness(
    stronger: &Adjacency,
    weaker: &Adjacency,
    domain: &DigitalImage,
) -> Result<Option<(Point, Point)>> {
    for a in [stronger, weaker] {
        if a.dim != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), found: a.dim });
        }
    }
    let pts = domain.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if stronger.adjacent_unchecked(p, q) && !weaker.adjacent_unchecked(p, q) {
                return Ok(Some((p.clone(), q.clone())));
            }
        }
    }
    Ok(None)
}

/// Whether every pair of `domain` adjacent under `a` is adjacent under `b`.
pub fn dominates(a: &Adjacency, b: &Adjacency, domain: &DigitalImage) -> Result<bool> {
    Ok(domination_witness(a, b, domain)?.is_none())
}

/// Product of images with the combined adjacency.
pub fn product_image(factors: &[(&DigitalImage, &Adjacency)], kind: ProductKind) -> Result<(DigitalImage, Adjacency)> {
    for (img, adj) in factors {
        if img.dim() != adj.dim() {
            return Err(Error::DimensionMismatch { expected: img.dim(), found: adj.dim() });
        }
    }
    let images: Vec<&DigitalImage> = factors.iter().map(|f| f.0).collect();
    let adjs: Vec<&Adjacency> = factors.iter().map(|f| f.1).collect();
    Ok((DigitalImage::product(&images)?, Adjacency::product(kind, &adjs)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(s: &str, dim: usize) -> Adjacency {
        Adjacency::parse(s, dim).unwrap()
    }

    #[test]
    fn product_kinds_on_pairs() {
        let p = Point::from([0, 0]);
        let diag = Point::from([1, 1]);
        let axis = Point::from([1, 0]);
        assert!(adj("T(c1,c1)", 2).adjacent(&p, &diag).unwrap());
        assert!(!adj("T(c1,c1)", 2).adjacent(&p, &axis).unwrap());
        assert!(adj("X(c1,c1)", 2).adjacent(&p, &axis).unwrap());
        assert!(!adj("X(c1,c1)", 2).adjacent(&p, &diag).unwrap());
        assert!(adj("NP2(c1,c1)", 2).adjacent(&p, &diag).unwrap());
        assert!(adj("L(c1,c1)", 2).adjacent(&p, &Point::from([1, 2])).unwrap());
        assert!(!adj("L(c1,c1)", 2).adjacent(&p, &Point::from([0, 2])).unwrap());
    }

    #[test]
    fn np1_equals_cartesian() {
        let w = DigitalImage::window(&[0, 0, 0], &[2, 2, 1]).unwrap();
        let a = adj("NP1(c1,c2@2)", 3);
        let b = adj("X(c1,c2@2)", 3);
        assert!(dominates(&a, &b, &w).unwrap() && dominates(&b, &a, &w).unwrap());
    }

    #[test]
    fn split_resolution() {
        assert_eq!(adj("T(c2,c1)", 3).split(), vec![2, 1]);
        assert_eq!(adj("X(c1,c1@2)", 3).split(), vec![1, 2]);
        assert_eq!(adj("X(c1,c1)", 3 - 1).split(), vec![1, 1]);
        assert!(matches!(Adjacency::parse("X(c1,c1)", 3), Err(Error::AmbiguousSplit { .. })));
        let s = AdjacencySpec::parse("X(c1,c1)").unwrap();
        assert_eq!(s.resolve(3, Some(&[2, 1])).unwrap().split(), vec![2, 1]);
        assert!(s.resolve(3, Some(&[2, 2])).is_err());
        assert!(matches!(Adjacency::parse("c3", 2), Err(Error::InvalidCu { .. })));
    }

    #[test]
    fn describe_round_trips() {
        let x = adj("c1", 1);
        let y = adj("c1", 2);
        let p = Adjacency::product(ProductKind::Tensor, &[&x, &y]).unwrap();
        let (text, split) = p.describe();
        assert_eq!(text, "T(c1,c1)");
        assert_eq!(split, Some(vec![1, 2]));
        let back = AdjacencySpec::parse(&text).unwrap().resolve(3, split.as_deref()).unwrap();
        assert_eq!(back, p);
    }
}
