use std::sync::Arc;

use itertools::Itertools;

use super::{interval, line, pool_maps, product, pt, show_map, show_maps, tuples, Fm, Products};
use crate::adjacency::ProductKind;
use crate::maps::DigitalMap;
use crate::space::Space;
use crate::verifier::families::{all_maps, continuous_maps, graph_pool};
use crate::verifier::{require, Checked, Ctx};

/// Every product of factor maps: pairs over the three-point pool and
/// triples over the two-point pool, with all maps between pool members.
fn over_map_products(
    ctx: &mut Ctx,
    kinds: impl Fn(usize) -> Vec<ProductKind>,
    mut claim: impl FnMut(&[&Fm], ProductKind, &DigitalMap) -> Checked,
) -> Checked {
    for (pool, v) in [(graph_pool(3), 2), (graph_pool(2), 3)] {
        let maps = pool_maps(pool, all_maps);
        let mut products = Products::new(pool);
        let kinds = kinds(v);
        for ids in tuples(maps.len(), v) {
            let fs: Vec<&Fm> = ids.iter().map(|&i| &maps[i]).collect();
            for &kind in &kinds {
                ctx.tick()?;
                let f = products.map(&fs, kind);
                claim(&fs, kind, &f)?;
            }
        }
    }
    Ok(())
}

/// Every product space: pairs over the three-point pool, triples over the two-point pool.
fn over_spaces(ctx: &mut Ctx, mut claim: impl FnMut(&mut Ctx, &[Arc<Space>]) -> Checked) -> Checked {
    for (pool, v) in [(graph_pool(3), 2), (graph_pool(2), 3)] {
        for ids in tuples(pool.len(), v) {
            let fs: Vec<Arc<Space>> = ids.iter().map(|&i| pool[i].clone()).collect();
            claim(ctx, &fs)?;
        }
    }
    Ok(())
}

fn factors_of<'a>(fs: &[&'a Fm]) -> Vec<&'a DigitalMap> {
    fs.iter().map(|f| &f.map).collect()
}

fn witness(fs: &[&Fm], kind: ProductKind) -> String {
    format!("{kind} product of {}", show_maps(&factors_of(fs)))
}

pub(super) fn continuity_via_connected_sets(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(3);
    for fm in pool_maps(pool, all_maps) {
        let f = &fm.map;
        let (x, y) = (f.domain(), f.codomain());
        let mut preserves = true;
        for mask in 1u32..1 << x.len() {
            ctx.tick()?;
            let subset: Vec<usize> = (0..x.len()).filter(|&i| mask >> i & 1 == 1).collect();
            if !x.subset_connected(&subset) {
                continue;
            }
            let mut image: Vec<usize> = subset.iter().map(|&i| f.at(i)).collect();
            image.sort_unstable();
            image.dedup();
            preserves &= y.subset_connected(&image);
        }
        require!(
            preserves == f.is_continuous(),
            "connected sets preserved: {preserves}, adjacency test: {}, {}",
            f.is_continuous(),
            show_map(f)
        );
    }
    Ok(())
}

pub(super) fn composition(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(3);
    let maps = pool_maps(pool, continuous_maps);
    for f in &maps {
        for g in maps.iter().filter(|g| g.dom == f.cod) {
            ctx.tick()?;
            let h = f.map.then(&g.map)?;
            require!(h.is_continuous(), "composite of {} and {} is discontinuous", show_map(&f.map), show_map(&g.map));
        }
    }
    Ok(())
}

pub(super) fn constants(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(4);
    for x in pool {
        for y in pool {
            for c in y.points() {
                ctx.tick()?;
                let f = DigitalMap::constant(x.clone(), y.clone(), c)?;
                require!(f.is_continuous(), "constant {} is discontinuous", show_map(&f));
            }
        }
    }
    Ok(())
}

pub(super) fn identities(ctx: &mut Ctx) -> Checked {
    for x in graph_pool(4) {
        ctx.tick()?;
        let f = DigitalMap::identity(x.clone());
        require!(f.is_continuous() && f.is_isomorphism(), "identity on {x:?}");
    }
    Ok(())
}

pub(super) fn np_full_iff(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |v| vec![ProductKind::Np(v)],
        |fs, kind, f| {
            let factors = fs.iter().all(|m| m.map.is_continuous());
            require!(
                f.is_continuous() == factors,
                "product continuous: {}, factors: {factors}; {}",
                f.is_continuous(),
                witness(fs, kind)
            );
            Ok(())
        },
    )
}

pub(super) fn np_isomorphisms(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |v| (1..=v).map(ProductKind::Np).collect(),
        |fs, kind, f| {
            let factors = fs.iter().all(|m| m.map.is_isomorphism());
            if f.is_isomorphism() {
                require!(factors, "isomorphic product of non-isomorphisms: {}", witness(fs, kind));
            }
            if factors && kind == ProductKind::Np(fs.len()) {
                require!(f.is_isomorphism(), "product of isomorphisms is not one: {}", witness(fs, kind));
            }
            Ok(())
        },
    )
}

fn projections_continuous(ctx: &mut Ctx, kinds: impl Fn(usize) -> Vec<ProductKind>) -> Checked {
    over_spaces(ctx, |ctx, fs| {
        for kind in kinds(fs.len()) {
            for i in 0..fs.len() {
                ctx.tick()?;
                let p = DigitalMap::projection(fs, kind, i)?;
                require!(
                    p.is_continuous(),
                    "projection {i} of {:?} under {kind} is discontinuous at {:?}",
                    p.domain(),
                    p.discontinuity()
                );
            }
        }
        Ok(())
    })
}

pub(super) fn np_projections(ctx: &mut Ctx) -> Checked {
    projections_continuous(ctx, |v| (1..=v).map(ProductKind::Np).collect())
}

pub(super) fn tensor_adjacent_pairs(ctx: &mut Ctx) -> Checked {
    over_spaces(ctx, |ctx, fs| {
        ctx.tick()?;
        let refs: Vec<&Arc<Space>> = fs.iter().collect();
        let x = product(&refs, ProductKind::Tensor)?;
        if x.has_adjacent_pair() {
            require!(fs.iter().all(|f| f.has_adjacent_pair()), "{x:?} has an adjacent pair but a factor has none");
        }
        Ok(())
    })?;
    // Continuous maps between tensor products of two-point factors.
    let pool = graph_pool(2);
    let squares: Vec<(Arc<Space>, Vec<Arc<Space>>)> = tuples(pool.len(), 2)
        .map(|ids| {
            let fs: Vec<Arc<Space>> = ids.iter().map(|&i| pool[i].clone()).collect();
            let refs: Vec<&Arc<Space>> = fs.iter().collect();
            (product(&refs, ProductKind::Tensor).expect("valid product"), fs)
        })
        .collect();
    for (x, _) in &squares {
        for (y, ys) in &squares {
            for f in continuous_maps(x, y) {
                ctx.tick()?;
                let moves = x.components().iter().any(|c| c.iter().any(|&i| f.at(i) != f.at(c[0])));
                if moves {
                    require!(
                        ys.iter().all(|y| y.has_adjacent_pair()),
                        "{} is not constant on a component",
                        show_map(&f)
                    );
                }
            }
        }
    }
    Ok(())
}

pub(super) fn injective_is_local(ctx: &mut Ctx) -> Checked {
    for fm in pool_maps(graph_pool(3), all_maps) {
        ctx.tick()?;
        if fm.map.is_injective() {
            require!(fm.map.is_locally_one_to_one(), "injective but not locally one-to-one: {}", show_map(&fm.map));
        }
    }
    ctx.tick()?;
    let fold = DigitalMap::from_table(interval(0, 2), interval(0, 1), vec![0, 1, 0])?;
    require!(fold.is_continuous() && !fold.is_locally_one_to_one(), "fold {}", show_map(&fold));
    let squash = DigitalMap::constant(line(&[0, 2]), line(&[0]), &pt(&[0]))?;
    require!(squash.is_locally_one_to_one(), "{} should be locally one-to-one", show_map(&squash));
    let flat = DigitalMap::constant(interval(0, 1), line(&[0]), &pt(&[0]))?;
    require!(!flat.is_locally_one_to_one(), "{} should not be locally one-to-one", show_map(&flat));
    Ok(())
}

pub(super) fn tensor_id_times_constant(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    let id = DigitalMap::identity(i.clone());
    let zero = DigitalMap::constant(i.clone(), i.clone(), &pt(&[0]))?;
    let f = DigitalMap::product(&[&id, &zero], ProductKind::Tensor)?;
    require!(id.is_continuous() && zero.is_continuous(), "factors should be continuous");
    let bad = f.discontinuity();
    require!(bad == Some((pt(&[0, 0]), pt(&[1, 1]))), "expected a break at (0,0), (1,1), got {bad:?}");
    Ok(())
}

pub(super) fn tensor_product_to_factors(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |_| vec![ProductKind::Tensor],
        |fs, kind, f| {
            if f.is_continuous() {
                require!(
                    fs.iter().all(|m| m.map.is_continuous()),
                    "continuous product with a discontinuous factor: {}",
                    witness(fs, kind)
                );
            }
            Ok(())
        },
    )
}

pub(super) fn tensor_local_factors(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |_| vec![ProductKind::Tensor],
        |fs, kind, f| {
            if fs.iter().all(|m| m.map.is_continuous() && m.map.is_locally_one_to_one()) {
                require!(f.is_continuous() && f.is_locally_one_to_one(), "{}", witness(fs, kind));
            }
            Ok(())
        },
    )
}

fn isomorphism_iff(ctx: &mut Ctx, kind: ProductKind) -> Checked {
    over_map_products(
        ctx,
        |_| vec![kind],
        |fs, kind, f| {
            let factors = fs.iter().all(|m| m.map.is_isomorphism());
            require!(
                f.is_isomorphism() == factors,
                "product isomorphism: {}, factors: {factors}; {}",
                f.is_isomorphism(),
                witness(fs, kind)
            );
            Ok(())
        },
    )
}

pub(super) fn tensor_isomorphisms(ctx: &mut Ctx) -> Checked {
    isomorphism_iff(ctx, ProductKind::Tensor)
}

pub(super) fn tensor_projections(ctx: &mut Ctx) -> Checked {
    projections_continuous(ctx, |_| vec![ProductKind::Tensor])
}

/// Every natural injection of every factor at every basepoint.
fn injections(
    ctx: &mut Ctx,
    kind: ProductKind,
    mut claim: impl FnMut(&[Arc<Space>], usize, &DigitalMap) -> Checked,
) -> Checked {
    over_spaces(ctx, |ctx, fs| {
        let bases = fs.iter().map(|f| f.points().iter().cloned()).multi_cartesian_product();
        for base in bases {
            for i in 0..fs.len() {
                ctx.tick()?;
                let inj = DigitalMap::injection(fs, kind, i, &base)?;
                claim(fs, i, &inj)?;
            }
        }
        Ok(())
    })
}

pub(super) fn tensor_injections(ctx: &mut Ctx) -> Checked {
    injections(ctx, ProductKind::Tensor, |fs, i, inj| {
        if fs[i].has_adjacent_pair() {
            require!(!inj.is_continuous(), "continuous tensor injection {}", show_map(inj));
        }
        Ok(())
    })
}

pub(super) fn cartesian_iff(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |_| vec![ProductKind::Cartesian],
        |fs, kind, f| {
            let factors = fs.iter().all(|m| m.map.is_continuous());
            require!(
                f.is_continuous() == factors,
                "product continuous: {}, factors: {factors}; {}",
                f.is_continuous(),
                witness(fs, kind)
            );
            Ok(())
        },
    )
}

pub(super) fn cartesian_projections(ctx: &mut Ctx) -> Checked {
    projections_continuous(ctx, |_| vec![ProductKind::Cartesian])
}

pub(super) fn cartesian_injections(ctx: &mut Ctx) -> Checked {
    injections(ctx, ProductKind::Cartesian, |_, _, inj| {
        require!(inj.is_continuous(), "discontinuous injection {}", show_map(inj));
        Ok(())
    })
}

pub(super) fn cartesian_isomorphisms(ctx: &mut Ctx) -> Checked {
    isomorphism_iff(ctx, ProductKind::Cartesian)
}

pub(super) fn lex_constant_times_id(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (x1, x2) = (interval(0, 1), interval(0, 2));
    let zero = DigitalMap::constant(x1, x2.clone(), &pt(&[0]))?;
    let id = DigitalMap::identity(x2);
    require!(zero.is_continuous() && id.is_continuous(), "factors should be continuous");
    let f = DigitalMap::product(&[&zero, &id], ProductKind::Lex)?;
    let (p, q) = (pt(&[0, 0]), pt(&[1, 2]));
    let (i, j) = (f.domain().index_of(&p).expect("in domain"), f.domain().index_of(&q).expect("in domain"));
    require!(f.domain().adjacent(i, j), "(0,0) and (1,2) should be adjacent");
    require!(!f.codomain().close(f.at(i), f.at(j)), "images of (0,0) and (1,2) are close");
    require!(!f.is_continuous(), "product is continuous");
    Ok(())
}

pub(super) fn lex_continuity(ctx: &mut Ctx) -> Checked {
    over_map_products(
        ctx,
        |_| vec![ProductKind::Lex],
        |fs, kind, f| {
            if f.is_continuous() {
                require!(
                    fs.iter().all(|m| m.map.is_continuous()),
                    "continuous product, discontinuous factor: {}",
                    witness(fs, kind)
                );
                if f.is_locally_one_to_one() {
                    require!(
                        fs.iter().all(|m| m.map.is_locally_one_to_one()),
                        "locally one-to-one product, factor is not: {}",
                        witness(fs, kind)
                    );
                }
            }
            if fs.iter().all(|m| m.map.is_continuous() && m.map.is_locally_one_to_one()) {
                require!(
                    f.is_continuous(),
                    "continuous locally one-to-one factors, discontinuous product: {}",
                    witness(fs, kind)
                );
            }
            Ok(())
        },
    )
}

pub(super) fn lex_isomorphisms(ctx: &mut Ctx) -> Checked {
    isomorphism_iff(ctx, ProductKind::Lex)
}

pub(super) fn lex_later_projections(ctx: &mut Ctx) -> Checked {
    let i = interval(0, 2);
    for v in 2..=3 {
        let fs = vec![i.clone(); v];
        let x: Vec<i64> = vec![0; v];
        let mut y: Vec<i64> = vec![2; v];
        y[0] = 1;
        for k in 1..v {
            ctx.tick()?;
            let p = DigitalMap::projection(&fs, ProductKind::Lex, k)?;
            let (a, b) =
                (p.domain().index_of(&pt(&x)).expect("in domain"), p.domain().index_of(&pt(&y)).expect("in domain"));
            require!(p.domain().adjacent(a, b), "{x:?} and {y:?} should be adjacent");
            require!(!p.codomain().close(p.at(a), p.at(b)), "projection {k} keeps {x:?}, {y:?} close");
        }
    }
    Ok(())
}

pub(super) fn permuted_isomorphisms(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(3);
    let isos: Vec<Fm> = pool_maps(pool, all_maps).into_iter().filter(|m| m.map.is_isomorphism()).collect();
    let mut products = Products::new(pool);
    for (f, g) in isos.iter().cartesian_product(&isos) {
        for kind in [ProductKind::Np(1), ProductKind::Np(2), ProductKind::Tensor, ProductKind::Cartesian] {
            ctx.tick()?;
            // f x g into Y_1 x Y_2, then coordinates swapped into Y_2 x Y_1.
            let fg = products.map(&[f, g], kind);
            require!(fg.is_isomorphism(), "{}", witness(&[f, g], kind));
            let target = products.get(&[g.cod, f.cod], kind);
            let swap = DigitalMap::from_fn(fg.codomain().clone(), target, |p| {
                let (a, b) = (pool[f.cod].dim(), pool[g.cod].dim());
                let c = p.coords();
                pt(&[&c[a..a + b], &c[..a]].concat())
            })?;
            let h = fg.then(&swap)?;
            require!(h.is_isomorphism(), "swapped product is not an isomorphism: {}", witness(&[f, g], kind));
        }
    }
    Ok(())
}

pub(super) fn lex_first_projection(ctx: &mut Ctx) -> Checked {
    projections_continuous_first(ctx)
}

fn projections_continuous_first(ctx: &mut Ctx) -> Checked {
    over_spaces(ctx, |ctx, fs| {
        ctx.tick()?;
        let p = DigitalMap::projection(fs, ProductKind::Lex, 0)?;
        require!(p.is_continuous(), "first projection of {:?} breaks at {:?}", p.domain(), p.discontinuity());
        Ok(())
    })
}
