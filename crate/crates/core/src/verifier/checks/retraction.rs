use std::sync::Arc;

use super::{interval, line, product, pt, space, tuples};
use crate::adjacency::ProductKind;
use crate::lattice::DigitalImage;
use crate::maps::{exists_retraction, is_retraction, DigitalMap};
use crate::space::Space;
use crate::verifier::families::{all_tables, graph_pool, subsets};
use crate::verifier::{require, Checked, Ctx, SEARCH_BUDGET};

fn retract(ctx: &mut Ctx, x: &Arc<Space>, a: &DigitalImage) -> Result<bool, crate::verifier::Stop> {
    Ok(ctx.settle(exists_retraction(x, a, SEARCH_BUDGET)?)?.is_some())
}

pub(super) fn retraction_definition(ctx: &mut Ctx) -> Checked {
    for x in graph_pool(4) {
        for a in subsets(x) {
            ctx.tick()?;
            let target = Arc::new(x.subspace(&a)?);
            let brute = all_tables(x, &target).into_iter().any(|t| {
                let r = DigitalMap::from_table_unchecked(x.clone(), target.clone(), t);
                is_retraction(&r, &a).unwrap_or(false)
            });
            let found = ctx.settle(exists_retraction(x, &a, SEARCH_BUDGET)?)?;
            require!(
                found.is_some() == brute,
                "search says {} but brute force says {brute} for {a:?} in {x:?}",
                found.is_some()
            );
            if let Some(r) = found {
                require!(is_retraction(&r, &a)?, "search returned a non-retraction {r:?}");
            }
        }
    }
    Ok(())
}

/// Every product of subsets `A_i ⊆ X_i` over pairs of three-point images and
/// triples of two-point images: calls `claim(factor verdicts, product verdict)`.
fn product_retracts(ctx: &mut Ctx, kind: impl Fn(usize) -> ProductKind) -> Checked {
    for (pool, v) in [(graph_pool(3), 2), (graph_pool(2), 3)] {
        let kind = kind(v);
        let pairs: Vec<(Arc<Space>, DigitalImage, bool)> = pool
            .iter()
            .flat_map(|x| subsets(x).into_iter().map(move |a| (x.clone(), a)))
            .map(|(x, a)| {
                let r = exists_retraction(&x, &a, SEARCH_BUDGET).map(|s| s.is_found()).unwrap_or(false);
                (x, a, r)
            })
            .collect();
        for ids in tuples(pairs.len(), v) {
            ctx.tick()?;
            let xs: Vec<&Arc<Space>> = ids.iter().map(|&i| &pairs[i].0).collect();
            let as_: Vec<&DigitalImage> = ids.iter().map(|&i| &pairs[i].1).collect();
            let x = product(&xs, kind)?;
            let a = DigitalImage::product(&as_)?;
            let whole = retract(ctx, &x, &a)?;
            let factors = ids.iter().all(|&i| pairs[i].2);
            require!(whole == factors, "{a:?} retract of {x:?}: {whole}, factors: {factors}");
        }
    }
    Ok(())
}

pub(super) fn np_full_retracts(ctx: &mut Ctx) -> Checked {
    product_retracts(ctx, ProductKind::Np)
}

pub(super) fn tensor_retract_fails(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let x = space(&[&[0, 0], &[1, 0], &[1, 1]], "c2")?;
    let xp = DigitalImage::new([pt(&[0, 0]), pt(&[1, 0])])?;
    require!(retract(ctx, &x, &xp)?, "X' is not a retract of X");
    let i = interval(0, 1);
    require!(retract(ctx, &i, &DigitalImage::from_ints(&[0])?)?, "{{0}} is not a retract of [0,1]");
    let prod = product(&[&x, &i], ProductKind::Tensor)?;
    let walk: [[i64; 3]; 6] = [[0, 0, 0], [1, 0, 1], [1, 1, 0], [0, 0, 1], [1, 0, 0], [1, 1, 1]];
    for w in walk.windows(2) {
        let (a, b) = (prod.index_of(&pt(&w[0])).expect("in product"), prod.index_of(&pt(&w[1])).expect("in product"));
        require!(prod.adjacent(a, b), "{:?} and {:?} are not adjacent", w[0], w[1]);
    }
    let a = DigitalImage::new([pt(&[0, 0, 0]), pt(&[1, 0, 0])])?;
    require!(!prod.subspace(&a)?.is_connected(), "X' x {{0}} is connected");
    require!(!retract(ctx, &prod, &a)?, "X' x {{0}} is a retract");
    Ok(())
}

pub(super) fn cartesian_retracts(ctx: &mut Ctx) -> Checked {
    product_retracts(ctx, |_| ProductKind::Cartesian)
}

pub(super) fn lex_retract_fails(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (x1, x2) = (interval(0, 1), interval(0, 5));
    require!(retract(ctx, &x1, &DigitalImage::from_ints(&[0])?)?, "{{0}} is not a retract of [0,1]");
    require!(retract(ctx, &x2, &DigitalImage::from_ints(&[1, 2, 3, 4])?)?, "[1,4] is not a retract of [0,5]");
    let x = product(&[&x1, &x2], ProductKind::Lex)?;
    let a = DigitalImage::product(&[line(&[0]).image(), &DigitalImage::from_ints(&[1, 2, 3, 4])?])?;
    let (p, q, r) = (pt(&[0, 1]), pt(&[1, 5]), pt(&[0, 4]));
    let adj =
        |u: &crate::Point, w: &crate::Point| x.adjacent(x.index_of(u).expect("in X"), x.index_of(w).expect("in X"));
    require!(adj(&p, &q) && adj(&q, &r), "(0,1) ~ (1,5) ~ (0,4) fails");
    require!(!retract(ctx, &x, &a)?, "{{0}} x [1,4] is a retract");
    Ok(())
}
