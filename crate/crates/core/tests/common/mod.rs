//! Brute-force reference implementations, written directly from the
//! definitions and sharing no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

pub type P = Vec<i64>;

/// An adjacency described the long way round.
#[derive(Clone, Debug)]
pub enum Adj {
    C(usize),
    Np(usize, Vec<(usize, Adj)>),
    T(Vec<(usize, Adj)>),
    X(Vec<(usize, Adj)>),
    L(Vec<(usize, Adj)>),
}

/// `c_u`: distinct, every coordinate within one, at most `u` of them differ.
pub fn cu(u: usize, p: &[i64], q: &[i64]) -> bool {
    let mut moved = 0;
    for (a, b) in p.iter().zip(q) {
        match (a - b).abs() {
            0 => {}
            1 => moved += 1,
            _ => return false,
        }
    }
    moved >= 1 && moved <= u
}

fn blocks<'a>(p: &'a [i64], widths: &[(usize, Adj)]) -> Vec<&'a [i64]> {
    let mut out = Vec::new();
    let mut at = 0;
    for (w, _) in widths {
        out.push(&p[at..at + w]);
        at += w;
    }
    out
}

/// At least one and at most `u` blocks move to an adjacent value, the rest stay.
fn normal(u: usize, fs: &[(usize, Adj)], p: &[i64], q: &[i64]) -> bool {
    let (a, b) = (blocks(p, fs), blocks(q, fs));
    let mut moved = 0;
    for (i, (_, f)) in fs.iter().enumerate() {
        if a[i] == b[i] {
            continue;
        }
        if !f.adj(a[i], b[i]) {
            return false;
        }
        moved += 1;
    }
    moved >= 1 && moved <= u
}

impl Adj {
    pub fn adj(&self, p: &[i64], q: &[i64]) -> bool {
        match self {
            Adj::C(u) => cu(*u, p, q),
            Adj::Np(u, fs) => normal(*u, fs, p, q),
            Adj::X(fs) => normal(1, fs, p, q),
            Adj::T(fs) => {
                let (a, b) = (blocks(p, fs), blocks(q, fs));
                fs.iter().enumerate().all(|(i, (_, f))| f.adj(a[i], b[i]))
            }
            Adj::L(fs) => {
                let (a, b) = (blocks(p, fs), blocks(q, fs));
                match (0..fs.len()).find(|&i| a[i] != b[i]) {
                    Some(i) => fs[i].1.adj(a[i], b[i]),
                    None => false,
                }
            }
        }
    }

    pub fn close(&self, p: &[i64], q: &[i64]) -> bool {
        p == q || self.adj(p, q)
    }
}

/// A finite image with an oracle adjacency.
#[derive(Clone, Debug)]
pub struct Img {
    pub pts: Vec<P>,
    pub adj: Adj,
}

impl Img {
    pub fn new(mut pts: Vec<P>, adj: Adj) -> Self {
        pts.sort();
        pts.dedup();
        Img { pts, adj }
    }

    pub fn line(xs: &[i64]) -> Self {
        Img::new(xs.iter().map(|&x| vec![x]).collect(), Adj::C(1))
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn a(&self, i: usize, j: usize) -> bool {
        self.adj.adj(&self.pts[i], &self.pts[j])
    }

    pub fn c(&self, i: usize, j: usize) -> bool {
        i == j || self.a(i, j)
    }

    pub fn index(&self, p: &[i64]) -> usize {
        self.pts.iter().position(|q| q == p).expect("point in image")
    }

    /// Connectedness of a subset given by indices; the empty set counts as connected.
    pub fn connected(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else { return true };
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &inside {
                if !seen.contains(&j) && self.a(i, j) {
                    seen.insert(j);
                    queue.push_back(j);
                }
            }
        }
        seen.len() == inside.len()
    }

    #[allow(clippy::needless_range_loop)]
    pub fn components(&self) -> Vec<BTreeSet<P>> {
        let mut label: Vec<Option<usize>> = vec![None; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if label[s].is_some() {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            label[s] = Some(out.len());
            while let Some(i) = stack.pop() {
                comp.insert(self.pts[i].clone());
                for j in 0..self.len() {
                    if label[j].is_none() && self.a(i, j) {
                        label[j] = Some(out.len());
                        stack.push(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Cartesian product of point sets.
    pub fn product(factors: &[&Img], adj: Adj) -> Img {
        let mut pts: Vec<P> = vec![vec![]];
        for f in factors {
            pts = pts.iter().flat_map(|p| f.pts.iter().map(move |q| [p.clone(), q.clone()].concat())).collect();
        }
        Img::new(pts, adj)
    }
}

/// Every table `X -> Y` as a vector of codomain indices.
pub fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t: Vec<usize>| (0..m).map(move |y| [t.clone(), vec![y]].concat())).collect();
    }
    out
}

pub fn continuous(x: &Img, y: &Img, t: &[usize]) -> bool {
    (0..x.len()).all(|i| (0..x.len()).all(|j| !x.a(i, j) || y.c(t[i], t[j])))
}

pub fn continuous_tables(x: &Img, y: &Img) -> Vec<Vec<usize>> {
    all_tables(x.len(), y.len()).into_iter().filter(|t| continuous(x, y, t)).collect()
}

pub fn isomorphism(x: &Img, y: &Img, t: &[usize]) -> bool {
    let bij = x.len() == y.len() && t.iter().collect::<BTreeSet<_>>().len() == t.len();
    bij && (0..x.len()).all(|i| (0..x.len()).all(|j| x.a(i, j) == y.a(t[i], t[j])))
}

/// Homotopy classes of continuous maps: one step joins `f` and `g` when
/// every point moves to a point adjacent or equal. With `fixed`, maps must
/// agree at that domain point to be joined.
pub fn homotopy_classes(x: &Img, y: &Img, fixed: Option<usize>) -> HashMap<Vec<usize>, usize> {
    let maps = continuous_tables(x, y);
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            if let Some(x0) = fixed {
                if maps[a][x0] != maps[b][x0] {
                    continue;
                }
            }
            if (0..x.len()).all(|i| y.c(maps[a][i], maps[b][i])) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    (0..maps.len()).map(|i| (maps[i].clone(), find(&mut parent, i))).collect()
}

/// Two index sets meet or contain an adjacent pair.
pub fn sets_adjacent(y: &Img, a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|&i| b.iter().any(|&j| y.c(i, j)))
}

pub fn weak(x: &Img, y: &Img, f: &[Vec<usize>]) -> bool {
    (0..x.len()).all(|i| (0..x.len()).all(|j| !x.a(i, j) || sets_adjacent(y, &f[i], &f[j])))
}

pub fn strong(x: &Img, y: &Img, f: &[Vec<usize>]) -> bool {
    let covers = |a: &[usize], b: &[usize]| a.iter().all(|&p| b.iter().any(|&q| y.c(p, q)));
    (0..x.len()).all(|i| (0..x.len()).all(|j| !x.a(i, j) || (covers(&f[i], &f[j]) && covers(&f[j], &f[i]))))
}

/// Every connected subset has a connected image.
pub fn connectivity_preserving(x: &Img, y: &Img, f: &[Vec<usize>]) -> bool {
    (1u32..1 << x.len()).all(|mask| {
        let set: Vec<usize> = (0..x.len()).filter(|i| mask >> i & 1 == 1).collect();
        if !x.connected(&set) {
            return true;
        }
        let img: BTreeSet<usize> = set.iter().flat_map(|&i| f[i].iter().copied()).collect();
        y.connected(&img.into_iter().collect::<Vec<_>>())
    })
}

pub fn shy(x: &Img, y: &Img, t: &[usize]) -> bool {
    let onto = (0..y.len()).all(|q| t.contains(&q));
    if !onto || !continuous(x, y, t) {
        return false;
    }
    let pre = |qs: &[usize]| -> Vec<usize> { (0..x.len()).filter(|&i| qs.contains(&t[i])).collect() };
    (0..y.len()).all(|q| x.connected(&pre(&[q])))
        && (0..y.len()).all(|a| (0..y.len()).all(|b| !y.a(a, b) || x.connected(&pre(&[a, b]))))
}

/// Locally one-to-one: injective on every closed neighbourhood.
pub fn locally_injective(x: &Img, t: &[usize]) -> bool {
    (0..x.len()).all(|c| {
        let nb: Vec<usize> = (0..x.len()).filter(|&i| x.c(c, i)).collect();
        nb.iter().map(|&i| t[i]).collect::<BTreeSet<_>>().len() == nb.len()
    })
}

/// Small images in one and two dimensions, independent of the library's
/// own families.
pub fn small_images() -> Vec<Img> {
    let mut out: Vec<Img> = [&[0][..], &[0, 1], &[0, 2], &[0, 3], &[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[0, 1, 2, 3]]
        .iter()
        .map(|xs| Img::line(xs))
        .collect();
    let shapes: [&[[i64; 2]]; 3] = [&[[0, 0], [1, 1]], &[[0, 0], [0, 1], [1, 1]], &[[0, 0], [0, 1], [1, 0], [1, 1]]];
    for s in shapes {
        for u in [1, 2] {
            out.push(Img::new(s.iter().map(|p| p.to_vec()).collect(), Adj::C(u)));
        }
    }
    out
}

/// Adjacency spec string for an oracle image, in the library grammar.
pub fn spec(a: &Adj) -> String {
    let factor = |(w, f): &(usize, Adj)| match f {
        Adj::C(u) => format!("c{u}@{w}"),
        other => spec(other),
    };
    let list = |fs: &[(usize, Adj)]| fs.iter().map(factor).collect::<Vec<_>>().join(",");
    match a {
        Adj::C(u) => format!("c{u}"),
        Adj::Np(u, fs) => format!("NP{u}({})", list(fs)),
        Adj::T(fs) => format!("T({})", list(fs)),
        Adj::X(fs) => format!("X({})", list(fs)),
        Adj::L(fs) => format!("L({})", list(fs)),
    }
}

/// The library's view of an oracle image.
pub fn to_space(img: &Img) -> std::sync::Arc<digitop::Space> {
    let pts = img.pts.iter().map(|p| digitop::Point::new(p.clone()).unwrap());
    let image = digitop::DigitalImage::new(pts).unwrap();
    digitop::Space::with_spec(image, &spec(&img.adj)).unwrap().into_arc()
}

/// Library point order agrees with the oracle's sorted order.
pub fn same_order(img: &Img, s: &digitop::Space) -> bool {
    s.points().iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>() == img.pts
}
