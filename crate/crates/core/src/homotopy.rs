//! Digital homotopies and the searches that find them.
//!
//! A homotopy of length `m` from `f` to `g` is a sequence of continuous maps
//! `F_0 = f, ..., F_m = g` where each point moves to an equal or adjacent
//! point from one step to the next. Deciding whether one exists is therefore
//! reachability in the graph whose vertices are the continuous maps and whose
//! edges join maps that agree up to adjacency at every point.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::maps::{same_space, DigitalMap};
use crate::search::{continuous_tables, End, MapSearch, Order, Search};
use crate::space::Space;

/// A homotopy table: `slices[t][x]` is the codomain index of `F(x, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    slices: Vec<Vec<usize>>,
}

/// Why a table is not a homotopy between the given maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum HomotopyViolation {
    SpaceMismatch,
    StartDiffers { x: Point },
    EndDiffers { x: Point },
    StepDiscontinuous { t: usize, x: Point, y: Point },
    TrackJumps { t: usize, x: Point },
    BasepointMoves { t: usize },
}

impl Homotopy {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, slices: Vec<Vec<usize>>) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::InvalidArgument("a homotopy needs at least one step".into()));
        }
        for s in &slices {
            if s.len() != domain.len() || s.iter().any(|&v| v >= codomain.len()) {
                return Err(Error::InvalidArgument("homotopy step does not fit the spaces".into()));
            }
        }
        Ok(Homotopy { domain, codomain, slices })
    }

    /// From the sequence of step maps `F_0, ..., F_m`.
    pub fn from_maps(steps: &[DigitalMap]) -> Result<Self> {
        let first = steps.first().ok_or_else(|| Error::InvalidArgument("a homotopy needs at least one step".into()))?;
        for s in steps {
            if !same_space(s.domain(), first.domain()) || !same_space(s.codomain(), first.codomain()) {
                return Err(Error::SpaceMismatch("homotopy steps have different spaces".into()));
            }
        }
        Homotopy::new(
            first.domain().clone(),
            first.codomain().clone(),
            steps.iter().map(|s| s.table().to_vec()).collect(),
        )
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    /// The length `m`; the table has `m + 1` steps.
    pub fn length(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slices(&self) -> &[Vec<usize>] {
        &self.slices
    }

    pub fn step(&self, t: usize) -> DigitalMap {
        DigitalMap::from_table_unchecked(self.domain.clone(), self.codomain.clone(), self.slices[t].clone())
    }

    pub fn value(&self, x: &Point, t: usize) -> Result<&Point> {
        let i = self.domain.require(x)?;
        let row = self.slices.get(t).ok_or_else(|| Error::InvalidArgument(format!("step {t} out of range")))?;
        Ok(self.codomain.point(row[i]))
    }

    /// The first clause of the definition that fails, if any.
    pub fn violation(&self, f: &DigitalMap, g: &DigitalMap, pointed_at: Option<&Point>) -> Option<HomotopyViolation> {
        for m in [f, g] {
            if !same_space(m.domain(), &self.domain) || !same_space(m.codomain(), &self.codomain) {
                return Some(HomotopyViolation::SpaceMismatch);
            }
        }
        let dom = &self.domain;
        let point = |i: usize| dom.point(i).clone();
        if let Some(x) = (0..dom.len()).find(|&x| self.slices[0][x] != f.at(x)) {
            return Some(HomotopyViolation::StartDiffers { x: point(x) });
        }
        let last = self.slices.len() - 1;
        if let Some(x) = (0..dom.len()).find(|&x| self.slices[last][x] != g.at(x)) {
            return Some(HomotopyViolation::EndDiffers { x: point(x) });
        }
        for (t, s) in self.slices.iter().enumerate() {
            let step = DigitalMap::from_table_unchecked(dom.clone(), self.codomain.clone(), s.clone());
            if let Some((x, y)) = step.discontinuity() {
                return Some(HomotopyViolation::StepDiscontinuous { t, x, y });
            }
        }
        for t in 0..last {
            if let Some(x) = (0..dom.len()).find(|&x| !self.codomain.close(self.slices[t][x], self.slices[t + 1][x])) {
                return Some(HomotopyViolation::TrackJumps { t, x: point(x) });
            }
        }
        if let Some(p) = pointed_at {
            let Some(x0) = dom.index_of(p) else { return Some(HomotopyViolation::BasepointMoves { t: 0 }) };
            if let Some(t) = (0..=last).find(|&t| self.slices[t][x0] != self.slices[0][x0]) {
                return Some(HomotopyViolation::BasepointMoves { t });
            }
        }
        None
    }
}

/// Whether `h` is a homotopy from `f` to `g`, holding `pointed_at` fixed if given.
pub fn is_homotopy(f: &DigitalMap, g: &DigitalMap, h: &Homotopy, pointed_at: Option<&Point>) -> bool {
    h.violation(f, g, pointed_at).is_none()
}

/// Continuous maps one homotopy step away from `table`, in lexicographic order.
fn step_neighbours(
    domain: &Space,
    codomain: &Space,
    table: &[usize],
    basepoint: Option<usize>,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> End {
    let candidates = table
        .iter()
        .enumerate()
        .map(|(x, &y)| if Some(x) == basepoint { vec![y] } else { codomain.closed_neighbourhood(y) })
        .collect();
    let mut search = MapSearch::new(domain, codomain, candidates, Order::Index).with_budget(*budget);
    let end = search.run(visit);
    *budget = budget.saturating_sub(search.nodes());
    end
}

fn basepoint_index(f: &DigitalMap, pointed_at: Option<&Point>) -> Result<Option<usize>> {
    pointed_at.map(|p| f.domain().require(p)).transpose()
}

/// Maps reachable from a start map, with their step distance.
#[derive(Clone, Debug)]
pub struct HomotopyClass {
    tables: Vec<Vec<usize>>,
    distance: Vec<usize>,
    parent: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomotopyClass {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn contains(&self, table: &[usize]) -> bool {
        self.index.contains_key(table)
    }

    pub fn distance(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).map(|&i| self.distance[i])
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    fn path_to(&self, table: &[usize]) -> Option<Vec<Vec<usize>>> {
        let mut at = *self.index.get(table)?;
        let mut path = vec![self.tables[at].clone()];
        while self.parent[at] != at {
            at = self.parent[at];
            path.push(self.tables[at].clone());
        }
        path.reverse();
        Some(path)
    }
}

/// Breadth-first exploration from `f`, stopping early once `target` is reached.
fn explore(f: &DigitalMap, basepoint: Option<usize>, target: Option<&[usize]>, budget: u64) -> Search<HomotopyClass> {
    let (dom, cod) = (f.domain().as_ref(), f.codomain().as_ref());
    let start = f.table().to_vec();
    let mut class = HomotopyClass {
        tables: vec![start.clone()],
        distance: vec![0],
        parent: vec![0],
        index: HashMap::from([(start, 0)]),
    };
    if target == Some(f.table()) {
        return Search::Found(class);
    }
    let mut left = budget;
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let current = class.tables[at].clone();
        let mut hit = false;
        let end = step_neighbours(dom, cod, &current, basepoint, &mut left, &mut |t| {
            if class.index.contains_key(t) {
                return ControlFlow::Continue(());
            }
            let id = class.tables.len();
            class.tables.push(t.to_vec());
            class.distance.push(class.distance[at] + 1);
            class.parent.push(at);
            class.index.insert(t.to_vec(), id);
            queue.push_back(id);
            if target == Some(t) {
                hit = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if hit {
            return Search::Found(class);
        }
        if end == End::BudgetExceeded {
            return Search::BudgetExceeded;
        }
    }
    if target.is_some() {
        Search::Exhausted
    } else {
        Search::Found(class)
    }
}

/// All maps homotopic to `f` (relative to the basepoint, if given).
pub fn homotopy_class(f: &DigitalMap, pointed_at: Option<&Point>, budget: u64) -> Result<Search<HomotopyClass>> {
    let base = basepoint_index(f, pointed_at)?;
    if !f.is_continuous() {
        return Ok(Search::Exhausted);
    }
    Ok(explore(f, base, None, budget))
}

/// Searches for a shortest homotopy from `f` to `g`.
///
/// Returns `Exhausted` when none exists (including when either map is
/// discontinuous). `budget` counts search nodes across all steps.
pub fn are_homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    pointed_at: Option<&Point>,
    budget: u64,
) -> Result<Search<Homotopy>> {
    if !same_space(f.domain(), g.domain()) || !same_space(f.codomain(), g.codomain()) {
        return Err(Error::SpaceMismatch("maps have different domains or codomains".into()));
    }
    let base = basepoint_index(f, pointed_at)?;
    if !f.is_continuous() || !g.is_continuous() {
        return Ok(Search::Exhausted);
    }
    if let Some(x0) = base {
        if f.at(x0) != g.at(x0) {
            return Ok(Search::Exhausted);
        }
    }
    if budget == 0 {
        return Ok(Search::BudgetExceeded);
    }
    Ok(explore(f, base, Some(g.table()), budget).map(|class| {
        let slices = class.path_to(g.table()).expect("target was reached");
        Homotopy { domain: f.domain().clone(), codomain: f.codomain().clone(), slices }
    }))
}

/// Maps `f: X -> Y`, `g: Y -> X` with homotopies `g∘f ≃ 1_X` and `f∘g ≃ 1_Y`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub forward: DigitalMap,
    pub backward: DigitalMap,
    pub back_then_forth: Homotopy,
    pub forth_then_back: Homotopy,
}

/// Searches for a homotopy equivalence; `pointed` gives basepoints in X and Y.
pub fn homotopy_equivalent(
    x: &Arc<Space>,
    y: &Arc<Space>,
    pointed: Option<(&Point, &Point)>,
    budget: u64,
) -> Result<Search<HomotopyEquivalence>> {
    let (bx, by) = match pointed {
        Some((p, q)) => (Some(x.require(p)?), Some(y.require(q)?)),
        None => (None, None),
    };
    if budget == 0 {
        return Ok(Search::BudgetExceeded);
    }
    let id_x = DigitalMap::identity(x.clone());
    let id_y = DigitalMap::identity(y.clone());
    let Search::Found(class_x) = explore(&id_x, bx, None, budget) else { return Ok(Search::BudgetExceeded) };
    let Search::Found(class_y) = explore(&id_y, by, None, budget) else { return Ok(Search::BudgetExceeded) };
    let pinned = |tables: Vec<Vec<usize>>, at: Option<usize>, to: Option<usize>| -> Vec<Vec<usize>> {
        match (at, to) {
            (Some(a), Some(b)) => tables.into_iter().filter(|t| t[a] == b).collect(),
            _ => tables,
        }
    };
    let forward = pinned(continuous_tables(x, y), bx, by);
    let backward = pinned(continuous_tables(y, x), by, bx);
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };
    for f in &forward {
        for g in &backward {
            let gf = compose(f, g);
            if !class_x.contains(&gf) || !class_y.contains(&compose(g, f)) {
                continue;
            }
            let forward = DigitalMap::from_table_unchecked(x.clone(), y.clone(), f.clone());
            let backward = DigitalMap::from_table_unchecked(y.clone(), x.clone(), g.clone());
            let gf_map = forward.then(&backward)?;
            let fg_map = backward.then(&forward)?;
            let px = bx.map(|i| x.point(i).clone());
            let py = by.map(|i| y.point(i).clone());
            let h1 = are_homotopic(&gf_map, &id_x, px.as_ref(), budget)?;
            let h2 = are_homotopic(&fg_map, &id_y, py.as_ref(), budget)?;
            return Ok(match (h1, h2) {
                (Search::Found(a), Search::Found(b)) => {
                    Search::Found(HomotopyEquivalence { forward, backward, back_then_forth: a, forth_then_back: b })
                }
                _ => Search::BudgetExceeded,
            });
        }
    }
    Ok(Search::Exhausted)
}
