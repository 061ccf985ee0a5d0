use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;

use super::{interval, line, pool_maps, product, pt, show_map, show_maps, tuples, Fm, Products};
use crate::adjacency::ProductKind;
use crate::homotopy::{are_homotopic, homotopy_class, homotopy_equivalent, is_homotopy, Homotopy};
use crate::lattice::Point;
use crate::maps::DigitalMap;
use crate::space::Space;
use crate::verifier::families::{continuous_maps, graph_pool};
use crate::verifier::{require, Checked, Ctx, SEARCH_BUDGET};

pub(super) fn equivalence_relation(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(4);
    for x in pool {
        for y in pool {
            let maps = continuous_maps(x, y);
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            for f in &maps {
                if seen.contains(f.table()) {
                    continue;
                }
                ctx.tick()?;
                let class = ctx.settle(homotopy_class(f, None, SEARCH_BUDGET)?)?.expect("continuous map has a class");
                require!(class.contains(f.table()), "{} is not homotopic to itself", show_map(f));
                let members: HashSet<&Vec<usize>> = class.tables().iter().collect();
                for t in class.tables() {
                    ctx.tick()?;
                    let g = DigitalMap::from_table(x.clone(), y.clone(), t.clone())?;
                    let other =
                        ctx.settle(homotopy_class(&g, None, SEARCH_BUDGET)?)?.expect("continuous map has a class");
                    let back: HashSet<&Vec<usize>> = other.tables().iter().collect();
                    require!(back == members, "classes of {} and {} differ", show_map(f), show_map(&g));
                    seen.insert(t.clone());
                }
            }
        }
    }
    Ok(())
}

pub(super) fn tensor_homotopy_breaks(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    let id = DigitalMap::identity(i.clone());
    let zero = DigitalMap::constant(i.clone(), i.clone(), &pt(&[0]))?;
    require!(
        ctx.settle(are_homotopic(&id, &zero, None, SEARCH_BUDGET)?)?.is_some(),
        "identity and constant on [0,1] are not homotopic"
    );
    let f = DigitalMap::product(&[&id, &id], ProductKind::Tensor)?;
    let g = DigitalMap::product(&[&zero, &zero], ProductKind::Tensor)?;
    require!(
        ctx.settle(are_homotopic(&f, &g, None, SEARCH_BUDGET)?)?.is_none(),
        "tensor identity is homotopic to a constant"
    );
    Ok(())
}

pub(super) fn tensor_type_breaks(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (i, o) = (interval(0, 1), line(&[0]));
    require!(ctx.settle(homotopy_equivalent(&i, &o, None, SEARCH_BUDGET)?)?.is_some(), "[0,1] is not contractible");
    let x = product(&[&i, &i], ProductKind::Tensor)?;
    let y = product(&[&o, &o], ProductKind::Tensor)?;
    require!(ctx.settle(homotopy_equivalent(&x, &y, None, SEARCH_BUDGET)?)?.is_none(), "tensor square is contractible");
    Ok(())
}

/// The staged homotopy: first factor moves while the second holds `f_2`,
/// then the second moves while the first holds `g_1`.
fn staged(
    products: &mut Products,
    fs: [&Fm; 2],
    h1: &Homotopy,
    h2: &Homotopy,
    g1: &DigitalMap,
) -> crate::Result<Homotopy> {
    let step = |products: &mut Products, a: DigitalMap, ai: &Fm, b: DigitalMap, bi: &Fm| {
        let a = Fm { dom: ai.dom, cod: ai.cod, map: a };
        let b = Fm { dom: bi.dom, cod: bi.cod, map: b };
        products.map(&[&a, &b], ProductKind::Cartesian)
    };
    let mut steps = Vec::new();
    for t in 0..=h1.length() {
        steps.push(step(products, h1.step(t), fs[0], fs[1].map.clone(), fs[1]));
    }
    for t in 1..=h2.length() {
        steps.push(step(products, g1.clone(), fs[0], h2.step(t), fs[1]));
    }
    Homotopy::from_maps(&steps)
}

pub(super) fn cartesian_homotopy(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(3);
    // Factor maps from at most two points into at most three.
    let maps: Vec<Fm> = pool_maps(pool, continuous_maps).into_iter().filter(|m| pool[m.dom].len() <= 2).collect();
    let mut products = Products::new(pool);
    for _ in 0..200 {
        ctx.tick()?;
        let mut pick = || -> (&Fm, &Fm) {
            let f = maps.choose(ctx.rng()).expect("maps exist");
            let same: Vec<&Fm> = maps.iter().filter(|g| g.dom == f.dom && g.cod == f.cod).collect();
            (f, *same.choose(ctx.rng()).expect("f itself"))
        };
        let (f1, g1) = pick();
        let (f2, g2) = pick();
        let f = products.map(&[f1, f2], ProductKind::Cartesian);
        let g = products.map(&[g1, g2], ProductKind::Cartesian);
        let label = || format!("f = {}, g = {}", show_maps(&[&f1.map, &f2.map]), show_maps(&[&g1.map, &g2.map]));
        let hp = ctx.settle(are_homotopic(&f, &g, None, SEARCH_BUDGET)?)?;
        let h1 = ctx.settle(are_homotopic(&f1.map, &g1.map, None, SEARCH_BUDGET)?)?;
        let h2 = ctx.settle(are_homotopic(&f2.map, &g2.map, None, SEARCH_BUDGET)?)?;
        require!(
            hp.is_some() == (h1.is_some() && h2.is_some()),
            "product homotopic: {}, factors: {} {}; {}",
            hp.is_some(),
            h1.is_some(),
            h2.is_some(),
            label()
        );
        if let (Some(a), Some(b)) = (&h1, &h2) {
            let h = staged(&mut products, [f1, f2], a, b, &g1.map)?;
            require!(is_homotopy(&f, &g, &h, None), "staged homotopy is invalid: {}", label());
        }
        // Pointed at a random point where the maps agree.
        let n = f.domain().len();
        let agree: Vec<usize> = (0..n).filter(|&i| f.at(i) == g.at(i)).collect();
        let Some(&x0) = agree.choose(ctx.rng()) else { continue };
        let p0 = f.domain().point(x0).clone();
        let (d1, d2) = (pool[f1.dom].dim(), pool[f2.dom].dim());
        let c = p0.coords();
        let (q1, q2) = (pt(&c[..d1]), pt(&c[d1..d1 + d2]));
        let hp = ctx.settle(are_homotopic(&f, &g, Some(&p0), SEARCH_BUDGET)?)?;
        let h1 = ctx.settle(are_homotopic(&f1.map, &g1.map, Some(&q1), SEARCH_BUDGET)?)?;
        let h2 = ctx.settle(are_homotopic(&f2.map, &g2.map, Some(&q2), SEARCH_BUDGET)?)?;
        require!(
            hp.is_some() == (h1.is_some() && h2.is_some()),
            "pointed at {p0}: product {}, factors {} {}; {}",
            hp.is_some(),
            h1.is_some(),
            h2.is_some(),
            label()
        );
        if let (Some(a), Some(b)) = (&h1, &h2) {
            let h = staged(&mut products, [f1, f2], a, b, &g1.map)?;
            require!(is_homotopy(&f, &g, &h, Some(&p0)), "staged pointed homotopy is invalid: {}", label());
        }
    }
    Ok(())
}

/// Node budget for homotopy type searches; identity classes of six-point
/// images can hold tens of thousands of maps.
const TYPE_BUDGET: u64 = 20 * SEARCH_BUDGET;

/// Largest product examined by the homotopy type checks.
const MAX_TYPE_POINTS: usize = 6;

fn equivalent(
    ctx: &mut Ctx,
    x: &Arc<Space>,
    y: &Arc<Space>,
    pointed: Option<(&Point, &Point)>,
) -> Result<bool, crate::verifier::Stop> {
    Ok(ctx.settle(homotopy_equivalent(x, y, pointed, TYPE_BUDGET)?)?.is_some())
}

pub(super) fn cartesian_equivalence(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(2);
    let mut products = Products::new(pool);
    let n = pool.len();
    let mut same = vec![vec![false; n]; n];
    for (a, b) in (0..n).cartesian_product(0..n) {
        same[a][b] = equivalent(ctx, &pool[a], &pool[b], None)?;
    }
    for xs in tuples(n, 2) {
        for ys in tuples(n, 2) {
            ctx.tick()?;
            let (x, y) = (products.get(&xs, ProductKind::Cartesian), products.get(&ys, ProductKind::Cartesian));
            let whole = equivalent(ctx, &x, &y, None)?;
            let factors = same[xs[0]][ys[0]] && same[xs[1]][ys[1]];
            require!(whole == factors, "{x:?} and {y:?}: products equivalent {whole}, factors {factors}");
        }
    }
    Ok(())
}

/// `(index, factor)` of the first factor with more than one point.
fn first_big(fs: &[Arc<Space>]) -> Option<(usize, &Arc<Space>)> {
    fs.iter().enumerate().find(|(_, f)| f.len() > 1)
}

pub(super) fn lex_collapse(ctx: &mut Ctx) -> Checked {
    for (pool, v) in [(graph_pool(3), 2), (graph_pool(2), 3)] {
        let mut products = Products::new(pool);
        for ids in tuples(pool.len(), v) {
            let fs: Vec<Arc<Space>> = ids.iter().map(|&i| pool[i].clone()).collect();
            let Some((k, xk)) = first_big(&fs) else { continue };
            if fs.iter().map(|f| f.len()).product::<usize>() > MAX_TYPE_POINTS {
                continue;
            }
            ctx.tick()?;
            let x = products.get(&ids, ProductKind::Lex);
            let p = x.point(0).clone();
            let offset: usize = fs[..k].iter().map(|f| f.dim()).sum();
            let pk = pt(&p.coords()[offset..offset + xk.dim()]);
            require!(
                equivalent(ctx, &x, xk, Some((&p, &pk)))?,
                "{x:?} and {xk:?} differ in pointed homotopy type at {p}, {pk}"
            );
        }
    }
    Ok(())
}

pub(super) fn lex_collapse_certificate(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (a, b) = (line(&[0, 1]), line(&[0, 2]));
    let factors = vec![a.clone(), b.clone()];
    let x = product(&[&a, &b], ProductKind::Lex)?;
    let base = [pt(&[0]), pt(&[0])];
    let inj = DigitalMap::injection(&factors, ProductKind::Lex, 0, &base)?;
    let proj = DigitalMap::projection(&factors, ProductKind::Lex, 0)?;
    require!(inj.is_continuous() && proj.is_continuous(), "injection or projection is discontinuous");
    require!(inj.then(&proj)? == DigitalMap::identity(a.clone()), "projection after injection is not the identity");
    let id = DigitalMap::identity(x.clone());
    let collapse = proj.then(&inj)?;
    // (0,2) and (0,0) are not adjacent, so the collapse needs a middle step
    // that swaps the first coordinate of the points off the base row.
    let middle = DigitalMap::from_fn(x.clone(), x.clone(), |q| {
        let c = q.coords();
        if c[1] == 0 {
            q.clone()
        } else {
            pt(&[1 - c[0], 0])
        }
    })?;
    require!(middle.is_continuous(), "middle step {middle:?} is discontinuous");
    let h = Homotopy::from_maps(&[id.clone(), middle, collapse.clone()])?;
    let p0 = pt(&[0, 0]);
    let v = h.violation(&id, &collapse, Some(&p0));
    require!(v.is_none(), "collapse homotopy fails: {v:?}");
    require!(is_homotopy(&id, &collapse, &h, Some(&p0)), "collapse homotopy rejected");
    require!(equivalent(ctx, &x, &a, Some((&p0, &pt(&[0]))))?, "search finds no pointed equivalence");
    Ok(())
}

pub(super) fn lex_swap_types(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(3);
    let mut products = Products::new(pool);
    let big: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].len() > 1).collect();
    for (&a, &b) in big.iter().cartesian_product(&big) {
        if a >= b || pool[a].len() * pool[b].len() > MAX_TYPE_POINTS || equivalent(ctx, &pool[a], &pool[b], None)? {
            continue;
        }
        ctx.tick()?;
        let (x, y) = (products.get(&[a, b], ProductKind::Lex), products.get(&[b, a], ProductKind::Lex));
        require!(
            !equivalent(ctx, &x, &y, None)?,
            "{:?} and {:?} differ in type, yet {x:?} and {y:?} agree",
            pool[a],
            pool[b]
        );
    }
    Ok(())
}

pub(super) fn lex_transfer(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(2);
    let mut products = Products::new(pool);
    let n = pool.len();
    for xs in tuples(n, 2) {
        for ys in tuples(n, 2) {
            let fx: Vec<Arc<Space>> = xs.iter().map(|&i| pool[i].clone()).collect();
            let fy: Vec<Arc<Space>> = ys.iter().map(|&i| pool[i].clone()).collect();
            let (Some((_, xj)), Some((_, yk))) = (first_big(&fx), first_big(&fy)) else { continue };
            if !equivalent(ctx, xj, yk, None)? {
                continue;
            }
            ctx.tick()?;
            let (x, y) = (products.get(&xs, ProductKind::Lex), products.get(&ys, ProductKind::Lex));
            require!(equivalent(ctx, &x, &y, None)?, "{xj:?} and {yk:?} agree in type, yet {x:?} and {y:?} differ");
        }
    }
    Ok(())
}
