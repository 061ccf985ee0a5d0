//! Plain-text file formats.
//!
//! Image file:
//! ```text
//! # comment
//! dim 2
//! adj T(c1,c1)      (optional)
//! split 1 1         (optional)
//! 0 0
//! 1 1
//! ```
//! Map file (`multimap` files use `-> { y ; y ; ... }` on the right):
//! ```text
//! map
//! dom square.img
//! cod line.img
//! dom_adj T(c1,c1)  (optional, overrides the image header)
//! cod_adj c1        (optional)
//! 0 0 -> 0
//! ```
//! Homotopy witness: `homotopy m=<m>`, then lines `t x1 .. xn -> y1 .. ym`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::adjacency::AdjacencySpec;
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lattice::{DigitalImage, Point};
use crate::maps::DigitalMap;
use crate::multivalued::MultiMap;
use crate::space::Space;

fn parse_err(path: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_string(), line, message: message.into() }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_coords(s: &str, path: &str, line: usize) -> Result<Point> {
    let coords = s
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| parse_err(path, line, format!("`{t}` is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords).map_err(|_| parse_err(path, line, "empty point"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Parsed contents of an image file.
#[derive(Clone, Debug)]
pub struct ImageFile {
    pub image: DigitalImage,
    pub adjacency: Option<AdjacencySpec>,
    pub split: Option<Vec<usize>>,
}

impl ImageFile {
    /// Builds the space, preferring `spec` over the header's adjacency.
    pub fn space(&self, spec: Option<&str>) -> Result<Space> {
        let (spec, split) = match spec {
            Some(s) => (AdjacencySpec::parse(s)?, None),
            None => (
                self.adjacency
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("no adjacency given and none in the image header".into()))?,
                self.split.clone(),
            ),
        };
        let adj = spec.resolve(self.image.dim(), split.as_deref())?;
        Space::new(self.image.clone(), adj)
    }
}

pub fn parse_image(text: &str, path: &str) -> Result<ImageFile> {
    let mut dim = None;
    let mut adjacency = None;
    let mut split = None;
    let mut points = Vec::new();
    let mut last_line = 0;
    for (line, l) in content_lines(text) {
        last_line = line;
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match head {
            "dim" => {
                let n: usize = rest.trim().parse().map_err(|_| parse_err(path, line, "bad dimension"))?;
                if n == 0 || dim.is_some() || !points.is_empty() {
                    return Err(parse_err(path, line, "`dim` must come first, once, and be positive"));
                }
                dim = Some(n);
            }
            "adj" => {
                let spec = AdjacencySpec::parse(rest).map_err(|e| parse_err(path, line, e.to_string()))?;
                adjacency = Some(spec);
            }
            "split" => {
                let parts = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(path, line, format!("bad split entry `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                split = Some(parts);
            }
            _ => {
                let n = dim.ok_or_else(|| parse_err(path, line, "missing `dim` header"))?;
                let p = parse_coords(l, path, line)?;
                if p.dim() != n {
                    return Err(parse_err(path, line, format!("expected {n} coordinates, found {}", p.dim())));
                }
                points.push((line, p));
            }
        }
    }
    if dim.is_none() {
        return Err(parse_err(path, last_line.max(1), "missing `dim` header"));
    }
    let mut sorted: Vec<&(usize, Point)> = points.iter().collect();
    sorted.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(parse_err(path, w[1].0, format!("duplicate point {}", w[1].1)));
    }
    let image = DigitalImage::new(points.into_iter().map(|(_, p)| p))
        .map_err(|e| parse_err(path, last_line.max(1), e.to_string()))?;
    Ok(ImageFile { image, adjacency, split })
}

pub fn read_image_file(path: impl AsRef<Path>) -> Result<ImageFile> {
    let path = path.as_ref();
    parse_image(&read(path)?, &path.display().to_string())
}

/// Image file text, including the adjacency header.
pub fn write_image(space: &Space) -> String {
    let mut out = format!("dim {}\n", space.dim());
    let (spec, split) = space.adjacency().describe();
    let _ = writeln!(out, "adj {spec}");
    if let Some(s) = split {
        let parts: Vec<String> = s.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "split {}", parts.join(" "));
    }
    for p in space.points() {
        out.push_str(&coords_text(p));
        out.push('\n');
    }
    out
}

fn coords_text(p: &Point) -> String {
    p.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

struct MapHeader {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    body: Vec<(usize, String)>,
}

fn parse_map_header(text: &str, path: &str, base: &Path, kind: &str) -> Result<MapHeader> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, l)) if l == kind => {}
        Some((line, _)) => return Err(parse_err(path, line, format!("expected `{kind}` header"))),
        None => return Err(parse_err(path, 1, format!("expected `{kind}` header"))),
    }
    let (mut dom, mut cod, mut dom_adj, mut cod_adj) = (None, None, None, None);
    let mut body = Vec::new();
    for (line, l) in lines {
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match head {
            "dom" | "cod" => {
                let file = base.join(rest);
                let img = read_image_file(&file)?;
                if head == "dom" {
                    dom = Some(img)
                } else {
                    cod = Some(img)
                }
            }
            "dom_adj" => dom_adj = Some(rest.to_string()),
            "cod_adj" => cod_adj = Some(rest.to_string()),
            _ => body.push((line, l.to_string())),
        }
    }
    let dom = dom.ok_or_else(|| parse_err(path, 1, "missing `dom` line"))?;
    let cod = cod.ok_or_else(|| parse_err(path, 1, "missing `cod` line"))?;
    let wrap = |e: Error| parse_err(path, 1, e.to_string());
    Ok(MapHeader {
        domain: dom.space(dom_adj.as_deref()).map_err(wrap)?.into_arc(),
        codomain: cod.space(cod_adj.as_deref()).map_err(wrap)?.into_arc(),
        body,
    })
}

/// Parses a map file; `base` is the directory image paths are relative to.
pub fn parse_map(text: &str, path: &str, base: &Path) -> Result<DigitalMap> {
    let h = parse_map_header(text, path, base, "map")?;
    let mut pairs = Vec::new();
    for (line, l) in &h.body {
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| parse_err(path, *line, "expected `x -> y`"))?;
        pairs.push((*line, parse_coords(lhs, path, *line)?, parse_coords(rhs, path, *line)?));
    }
    check_rows(&h.domain, pairs.iter().map(|(l, x, _)| (*l, x)), path)?;
    DigitalMap::from_pairs(h.domain, h.codomain, pairs.into_iter().map(|(_, x, y)| (x, y)))
        .map_err(|e| parse_err(path, 1, e.to_string()))
}

fn check_rows<'a>(domain: &Space, rows: impl Iterator<Item = (usize, &'a Point)>, path: &str) -> Result<()> {
    let mut seen = vec![false; domain.len()];
    for (line, x) in rows {
        let i = domain.index_of(x).ok_or_else(|| parse_err(path, line, format!("{x} is not in the domain")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(parse_err(path, line, format!("{x} is assigned twice")));
        }
    }
    Ok(())
}

pub fn read_map_file(path: impl AsRef<Path>) -> Result<DigitalMap> {
    let path = path.as_ref();
    parse_map(&read(path)?, &path.display().to_string(), &parent_dir(path))
}

fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Map file text referring to the given image file names.
pub fn write_map(f: &DigitalMap, dom_file: &str, cod_file: &str) -> String {
    let mut out = format!("map\ndom {dom_file}\ncod {cod_file}\n");
    let _ = writeln!(out, "dom_adj {}", f.domain().adjacency().pinned_spec());
    let _ = writeln!(out, "cod_adj {}", f.codomain().adjacency().pinned_spec());
    for (x, y) in f.pairs() {
        let _ = writeln!(out, "{} -> {}", coords_text(x), coords_text(y));
    }
    out
}

pub fn parse_multimap(text: &str, path: &str, base: &Path) -> Result<MultiMap> {
    let h = parse_map_header(text, path, base, "multimap")?;
    let mut pairs = Vec::new();
    for (line, l) in &h.body {
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| parse_err(path, *line, "expected `x -> { y ; ... }`"))?;
        let inner = rhs
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| parse_err(path, *line, "value set must be enclosed in braces"))?;
        let ys = inner.split(';').map(|t| parse_coords(t, path, *line)).collect::<Result<Vec<_>>>()?;
        pairs.push((*line, parse_coords(lhs, path, *line)?, ys));
    }
    check_rows(&h.domain, pairs.iter().map(|(l, x, _)| (*l, x)), path)?;
    MultiMap::from_pairs(h.domain, h.codomain, pairs.into_iter().map(|(_, x, y)| (x, y)))
        .map_err(|e| parse_err(path, 1, e.to_string()))
}

pub fn read_multimap_file(path: impl AsRef<Path>) -> Result<MultiMap> {
    let path = path.as_ref();
    parse_multimap(&read(path)?, &path.display().to_string(), &parent_dir(path))
}

pub fn write_multimap(f: &MultiMap, dom_file: &str, cod_file: &str) -> String {
    let mut out = format!("multimap\ndom {dom_file}\ncod {cod_file}\n");
    let _ = writeln!(out, "dom_adj {}", f.domain().adjacency().pinned_spec());
    let _ = writeln!(out, "cod_adj {}", f.codomain().adjacency().pinned_spec());
    for (i, set) in f.table().iter().enumerate() {
        let ys: Vec<String> = set.iter().map(|&j| coords_text(f.codomain().point(j))).collect();
        let _ = writeln!(out, "{} -> {{ {} }}", coords_text(f.domain().point(i)), ys.join(" ; "));
    }
    out
}

pub fn write_homotopy(h: &Homotopy) -> String {
    let mut out = format!("homotopy m={}\n", h.length());
    for (t, step) in h.slices().iter().enumerate() {
        for (x, &y) in step.iter().enumerate() {
            let _ = writeln!(out, "{t} {} -> {}", coords_text(h.domain().point(x)), coords_text(h.codomain().point(y)));
        }
    }
    out
}

pub fn parse_homotopy(text: &str, path: &str, domain: Arc<Space>, codomain: Arc<Space>) -> Result<Homotopy> {
    let mut lines = content_lines(text);
    let m: usize = match lines.next() {
        Some((line, l)) => l
            .strip_prefix("homotopy")
            .and_then(|r| r.trim().strip_prefix("m="))
            .and_then(|m| m.trim().parse().ok())
            .ok_or_else(|| parse_err(path, line, "expected `homotopy m=<m>`"))?,
        None => return Err(parse_err(path, 1, "expected `homotopy m=<m>`")),
    };
    let mut slices = vec![vec![usize::MAX; domain.len()]; m + 1];
    for (line, l) in lines {
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| parse_err(path, line, "expected `t x -> y`"))?;
        let mut parts = lhs.split_whitespace();
        let t: usize =
            parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| parse_err(path, line, "bad step index"))?;
        if t > m {
            return Err(parse_err(path, line, format!("step {t} exceeds m={m}")));
        }
        let x = parse_coords(&parts.collect::<Vec<_>>().join(" "), path, line)?;
        let y = parse_coords(rhs, path, line)?;
        let i = domain.index_of(&x).ok_or_else(|| parse_err(path, line, format!("{x} is not in the domain")))?;
        let j = codomain.index_of(&y).ok_or_else(|| parse_err(path, line, format!("{y} is not in the codomain")))?;
        slices[t][i] = j;
    }
    if slices.iter().any(|s| s.contains(&usize::MAX)) {
        return Err(parse_err(path, 1, "homotopy table is incomplete"));
    }
    Homotopy::new(domain, codomain, slices)
}

/// Graphviz text: one node per point labelled by its coordinates, one edge per adjacent pair.
pub fn export_dot(space: &Space) -> String {
    let mut out = String::from("graph image {\n");
    for (i, p) in space.points().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{p}\"];");
    }
    for i in 0..space.len() {
        for &j in space.neighbours(i) {
            if j > i {
                let _ = writeln!(out, "  n{i} -- n{j};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_round_trip() {
        let text = "# square\ndim 2\nadj T(c1,c1)\n0 0\n0 1\n1 0\n1 1\n";
        let f = parse_image(text, "sq.img").unwrap();
        let s = f.space(None).unwrap();
        assert_eq!(s.edge_count(), 2);
        let back = parse_image(&write_image(&s), "x").unwrap().space(None).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn image_errors_carry_lines() {
        let e = parse_image("dim 2\n0 0\n1 x\n", "bad.img").unwrap_err();
        assert_eq!(e.to_string(), "bad.img:3: `x` is not an integer");
        let e = parse_image("dim 1\n0\n\n0\n", "dup.img").unwrap_err();
        assert_eq!(e.to_string(), "dup.img:4: duplicate point (0)");
        assert!(parse_image("0 0\n", "nodim").is_err());
        let e = parse_image("dim 1\nadj L(c1\n0\n", "adj.img").unwrap_err();
        assert!(e.to_string().starts_with("adj.img:2: syntax error at offset 5"));
    }

    #[test]
    fn dot_counts() {
        let s = Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1]).unwrap(), "c2").unwrap();
        let dot = export_dot(&s);
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("label=\"(0,1)\""));
    }
}
