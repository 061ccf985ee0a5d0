use std::sync::Arc;

use itertools::Itertools;

use super::{interval, line, product, pt, space, tuples, Products};
use crate::adjacency::ProductKind;
use crate::maps::DigitalMap;
use crate::space::Space;
use crate::verifier::families::graph_pool;
use crate::verifier::{require, Checked, Ctx};

/// Runs `claim` on every pair from the four-point pool and every triple from
/// the three-point pool.
fn over_products(
    ctx: &mut Ctx,
    kinds: impl Fn(usize) -> Vec<ProductKind>,
    mut claim: impl FnMut(&[&Arc<Space>], ProductKind, &Space) -> Checked,
) -> Checked {
    for (pool, v) in [(graph_pool(4), 2), (graph_pool(3), 3)] {
        let mut products = Products::new(pool);
        for ids in tuples(pool.len(), v) {
            let factors: Vec<&Arc<Space>> = ids.iter().map(|&i| &pool[i]).collect();
            for kind in kinds(v) {
                ctx.tick()?;
                let x = products.get(&ids, kind);
                claim(&factors, kind, &x)?;
            }
        }
    }
    Ok(())
}

pub(super) fn lex_asymmetry(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (a, b) = (line(&[0, 1]), line(&[0, 2]));
    let x = product(&[&a, &b], ProductKind::Lex)?;
    let y = product(&[&b, &a], ProductKind::Lex)?;
    require!(x.is_connected(), "{x:?} is not connected");
    require!(!y.is_connected(), "{y:?} is connected");
    let walk = [[0, 0], [1, 0], [0, 2], [1, 2]];
    for w in walk.windows(2) {
        let (i, j) = (x.index_of(&pt(&w[0])).expect("in X"), x.index_of(&pt(&w[1])).expect("in X"));
        require!(x.adjacent(i, j), "{:?} and {:?} are not adjacent in X", w[0], w[1]);
    }
    require!(y.find_path(&pt(&[0, 0]), &pt(&[2, 0]))?.is_none(), "Y has a path from (0,0) to (2,0)");
    let mut bijections = 0;
    for perm in (0..4).permutations(4) {
        ctx.tick()?;
        bijections += 1;
        let f = DigitalMap::from_table(x.clone(), y.clone(), perm)?;
        require!(!f.is_isomorphism(), "isomorphism {f:?}");
    }
    require!(bijections == 24, "expected 24 bijections, saw {bijections}");
    Ok(())
}

pub(super) fn np_full_connected(ctx: &mut Ctx) -> Checked {
    over_products(
        ctx,
        |v| vec![ProductKind::Np(v)],
        |fs, _, x| {
            let factors = fs.iter().all(|f| f.is_connected());
            require!(x.is_connected() == factors, "product {x:?} connected: {}, factors: {factors}", x.is_connected());
            Ok(())
        },
    )
}

pub(super) fn tensor_connected_factors(ctx: &mut Ctx) -> Checked {
    over_products(
        ctx,
        |_| vec![ProductKind::Tensor],
        |fs, _, x| {
            if x.is_connected() {
                let bad = fs.iter().find(|f| !f.is_connected());
                require!(bad.is_none(), "{x:?} connected with disconnected factor {:?}", bad.expect("factor"));
            }
            Ok(())
        },
    )
}

pub(super) fn tensor_square_components(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    let x = product(&[&i, &i], ProductKind::Tensor)?;
    let mut comps: Vec<Vec<_>> = x
        .component_points()
        .into_iter()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    comps.sort();
    let expected = vec![vec![pt(&[0, 0]), pt(&[1, 1])], vec![pt(&[0, 1]), pt(&[1, 0])]];
    require!(comps == expected, "components {comps:?}");
    Ok(())
}

/// The six points of the digital simple closed curve in the figure, in cyclic order.
pub(super) fn msc8() -> crate::Result<Arc<Space>> {
    space(&[&[0, 0], &[1, 1], &[2, 1], &[3, 0], &[2, -1], &[1, -1]], "c2")
}

pub(super) const MSC8_CYCLE: [[i64; 2]; 6] = [[0, 0], [1, 1], [2, 1], [3, 0], [2, -1], [1, -1]];

pub(super) fn msc8_times_interval(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let c = msc8()?;
    let i = interval(0, 1);
    for kind in [ProductKind::Cartesian, ProductKind::Np(1)] {
        let x = product(&[&c, &i], kind)?;
        require!(x.len() == 12 && x.is_connected(), "{x:?} should be 12 connected points");
    }
    let x = product(&[&c, &i], ProductKind::Tensor)?;
    require!(!x.is_connected(), "tensor product is connected");
    let sizes: Vec<usize> = x.components().iter().map(Vec::len).collect();
    require!(sizes == [6, 6], "tensor components have sizes {sizes:?}");
    for (k, p) in MSC8_CYCLE.iter().enumerate() {
        for t in 0..2 {
            ctx.tick()?;
            let me = pt(&[p[0], p[1], t]);
            let mut got = x.neighbourhood(&me, false)?;
            got.sort();
            let mut want: Vec<_> =
                [(k + 5) % 6, (k + 1) % 6].iter().map(|&j| pt(&[MSC8_CYCLE[j][0], MSC8_CYCLE[j][1], 1 - t])).collect();
            want.sort();
            require!(got == want, "neighbours of {me}: {got:?}, expected {want:?}");
        }
    }
    Ok(())
}

pub(super) fn cartesian_connected(ctx: &mut Ctx) -> Checked {
    over_products(
        ctx,
        |_| vec![ProductKind::Cartesian],
        |fs, _, x| {
            let factors = fs.iter().all(|f| f.is_connected());
            require!(x.is_connected() == factors, "product {x:?} connected: {}, factors: {factors}", x.is_connected());
            Ok(())
        },
    )
}

pub(super) fn lex_pair_connected(ctx: &mut Ctx) -> Checked {
    let pool = graph_pool(4);
    let mut products = Products::new(pool);
    for (a, b) in (0..pool.len()).cartesian_product(0..pool.len()) {
        if pool[a].len() < 2 {
            continue;
        }
        ctx.tick()?;
        let x = products.get(&[a, b], ProductKind::Lex);
        require!(
            x.is_connected() == pool[a].is_connected(),
            "{x:?} connected: {}, first factor: {}",
            x.is_connected(),
            pool[a].is_connected()
        );
    }
    Ok(())
}

pub(super) fn lex_connected(ctx: &mut Ctx) -> Checked {
    over_products(
        ctx,
        |_| vec![ProductKind::Lex],
        |fs, _, x| {
            // With every factor a singleton the product is one point.
            let expected = fs.iter().find(|f| f.len() > 1).is_none_or(|f| f.is_connected());
            require!(x.is_connected() == expected, "{x:?} connected: {}, expected {expected}", x.is_connected());
            Ok(())
        },
    )
}
