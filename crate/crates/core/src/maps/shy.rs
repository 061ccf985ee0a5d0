use serde::Serialize;

use super::DigitalMap;
use crate::lattice::Point;

/// The first reason a map fails to be shy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ShyViolation {
    NotContinuous {
        #[serde(serialize_with = "as_text")]
        x: Point,
        #[serde(serialize_with = "as_text")]
        y: Point,
    },
    NotSurjective {
        #[serde(serialize_with = "as_text")]
        missed: Point,
    },
    PreimageDisconnected {
        #[serde(serialize_with = "as_text")]
        y: Point,
    },
    PairPreimageDisconnected {
        #[serde(serialize_with = "as_text")]
        y: Point,
        #[serde(serialize_with = "as_text")]
        z: Point,
    },
}

/// Reports show points as `(x1,...,xn)`, like everywhere else.
fn as_text<S: serde::Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Shy: continuous, surjective, connected preimages of points and of adjacent pairs.
pub fn shy_violation(f: &DigitalMap) -> Option<ShyViolation> {
    if let Some((x, y)) = f.discontinuity() {
        return Some(ShyViolation::NotContinuous { x, y });
    }
    let cod = f.codomain();
    let mut fibres = vec![Vec::new(); cod.len()];
    for (i, &j) in f.table().iter().enumerate() {
        fibres[j].push(i);
    }
    if let Some(j) = fibres.iter().position(Vec::is_empty) {
        return Some(ShyViolation::NotSurjective { missed: cod.point(j).clone() });
    }
    let dom = f.domain();
    for (j, fibre) in fibres.iter().enumerate() {
        if !dom.subset_connected(fibre) {
            return Some(ShyViolation::PreimageDisconnected { y: cod.point(j).clone() });
        }
    }
    for j in 0..cod.len() {
        for &k in cod.neighbours(j) {
            if k > j {
                let both: Vec<usize> = fibres[j].iter().chain(&fibres[k]).copied().collect();
                if !dom.subset_connected(&both) {
                    return Some(ShyViolation::PairPreimageDisconnected {
                        y: cod.point(j).clone(),
                        z: cod.point(k).clone(),
                    });
                }
            }
        }
    }
    None
}

pub fn is_shy(f: &DigitalMap) -> bool {
    shy_violation(f).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Space;

    #[test]
    fn collapsing_an_interval_is_shy() {
        let x = Space::interval(0, 2).unwrap().into_arc();
        let y = Space::interval(0, 1).unwrap().into_arc();
        let f = DigitalMap::from_fn(x.clone(), y.clone(), |p| Point::from([p.coords()[0].min(1)])).unwrap();
        assert!(is_shy(&f));
        let g = DigitalMap::from_fn(x, y, |p| Point::from([p.coords()[0] % 2])).unwrap();
        assert_eq!(shy_violation(&g), Some(ShyViolation::PreimageDisconnected { y: Point::from([0]) }));
    }
}
