//! Backtracking enumeration of continuous maps between finite spaces.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::space::Space;

/// Outcome of a bounded existence search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Search<T> {
    Found(T),
    /// The whole search space was explored without a hit.
    Exhausted,
    BudgetExceeded,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Exhausted => Search::Exhausted,
            Search::BudgetExceeded => Search::BudgetExceeded,
        }
    }
}

/// Default node budget for searches that take none explicitly.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Order {
    /// Domain points in index order; solutions come out lexicographically.
    Index,
    /// Breadth-first from the most constrained points, for early pruning.
    Bfs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Completed,
    Stopped,
    BudgetExceeded,
}

/// Requires each group of domain points to hit every listed value.
pub(crate) struct Cover {
    pub group_of: Vec<usize>,
    pub required: Vec<Vec<usize>>,
}

pub(crate) struct MapSearch<'a> {
    domain: &'a Space,
    codomain: &'a Space,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    cover: Option<Cover>,
    budget: u64,
    nodes: u64,
}

impl<'a> MapSearch<'a> {
    pub fn new(domain: &'a Space, codomain: &'a Space, candidates: Vec<Vec<usize>>, order: Order) -> Self {
        let n = domain.len();
        let order = match order {
            Order::Index => (0..n).collect(),
            Order::Bfs => bfs_order(domain, &candidates),
        };
        let mut position = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            position[x] = k;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(k, &x)| domain.neighbours(x).iter().copied().filter(|&y| position[y] < k).collect())
            .collect();
        MapSearch { domain, codomain, candidates, order, earlier, cover: None, budget: DEFAULT_BUDGET, nodes: 0 }
    }

    /// All maps, no restriction beyond continuity.
    pub fn all(domain: &'a Space, codomain: &'a Space, order: Order) -> Self {
        let every: Vec<usize> = (0..codomain.len()).collect();
        MapSearch::new(domain, codomain, vec![every; domain.len()], order)
    }

    pub fn with_cover(mut self, cover: Cover) -> Self {
        self.cover = Some(cover);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Calls `visit` on every continuous map table allowed by the candidates.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> End {
        let n = self.domain.len();
        let mut table = vec![usize::MAX; n];
        let mut state = self.cover.as_ref().map(|c| CoverState::new(c, n));
        self.descend(0, &mut table, &mut state, visit)
    }

    fn descend(
        &mut self,
        k: usize,
        table: &mut [usize],
        cover: &mut Option<CoverState>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> End {
        if k == self.order.len() {
            return match visit(table) {
                ControlFlow::Continue(()) => End::Completed,
                ControlFlow::Break(()) => End::Stopped,
            };
        }
        let x = self.order[k];
        for ci in 0..self.candidates[x].len() {
            let c = self.candidates[x][ci];
            if !self.earlier[k].iter().all(|&y| self.codomain.close(table[y], c)) {
                continue;
            }
            if let (Some(state), Some(spec)) = (cover.as_mut(), self.cover.as_ref()) {
                if !state.assign(spec, x, c) {
                    state.unassign(spec, x, c);
                    continue;
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return End::BudgetExceeded;
            }
            table[x] = c;
            let end = self.descend(k + 1, table, cover, visit);
            table[x] = usize::MAX;
            if let (Some(state), Some(spec)) = (cover.as_mut(), self.cover.as_ref()) {
                state.unassign(spec, x, c);
            }
            if end != End::Completed {
                return end;
            }
        }
        End::Completed
    }
}

struct CoverState {
    hits: Vec<Vec<usize>>,
    uncovered: Vec<usize>,
    remaining: Vec<usize>,
}

impl CoverState {
    fn new(cover: &Cover, n: usize) -> Self {
        let mut remaining = vec![0; cover.required.len()];
        for x in 0..n {
            remaining[cover.group_of[x]] += 1;
        }
        CoverState {
            hits: cover.required.iter().map(|r| vec![0; r.len()]).collect(),
            uncovered: cover.required.iter().map(Vec::len).collect(),
            remaining,
        }
    }

    /// Records the assignment and reports whether the group can still be covered.
    fn assign(&mut self, cover: &Cover, x: usize, value: usize) -> bool {
        let g = cover.group_of[x];
        self.remaining[g] -= 1;
        if let Ok(slot) = cover.required[g].binary_search(&value) {
            if self.hits[g][slot] == 0 {
                self.uncovered[g] -= 1;
            }
            self.hits[g][slot] += 1;
        }
        self.remaining[g] >= self.uncovered[g]
    }

    fn unassign(&mut self, cover: &Cover, x: usize, value: usize) {
        let g = cover.group_of[x];
        self.remaining[g] += 1;
        if let Ok(slot) = cover.required[g].binary_search(&value) {
            self.hits[g][slot] -= 1;
            if self.hits[g][slot] == 0 {
                self.uncovered[g] += 1;
            }
        }
    }
}

fn bfs_order(domain: &Space, candidates: &[Vec<usize>]) -> Vec<usize> {
    let n = domain.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // Pinned points (at most one candidate) seed the first wave together.
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| candidates[i].len() <= 1).collect();
    for &i in &queue {
        seen[i] = true;
    }
    let mut next_seed = 0;
    loop {
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in domain.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        while next_seed < n && seen[next_seed] {
            next_seed += 1;
        }
        if next_seed == n {
            return order;
        }
        seen[next_seed] = true;
        queue.push_back(next_seed);
    }
}

/// Every continuous map table from `domain` to `codomain`, in lexicographic order.
pub(crate) fn continuous_tables(domain: &Space, codomain: &Space) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    MapSearch::all(domain, codomain, Order::Index).with_budget(u64::MAX).run(&mut |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_continuous_maps() {
        let x = Space::interval(0, 1).unwrap();
        let y = Space::line(&[0, 2]).unwrap();
        // Adjacent points must land together, so only constants survive.
        assert_eq!(continuous_tables(&x, &y).len(), 2);
        assert_eq!(continuous_tables(&y, &x).len(), 4);
        let p = Space::interval(0, 2).unwrap();
        // 27 maps; continuity forbids 0 -> 0 next to 2.
        let brute = (0..27)
            .filter(|code: &usize| {
                let t = [code % 3, code / 3 % 3, code / 9];
                (0..2).all(|i| t[i].abs_diff(t[i + 1]) <= 1)
            })
            .count();
        assert_eq!(continuous_tables(&p, &p).len(), brute);
    }

    #[test]
    fn cover_forces_surjection() {
        let x = Space::interval(0, 2).unwrap();
        let y = Space::interval(0, 1).unwrap();
        let mut count = 0;
        let cover = Cover { group_of: vec![0; 3], required: vec![vec![0, 1]] };
        MapSearch::all(&x, &y, Order::Bfs).with_cover(cover).run(&mut |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
    }
}
