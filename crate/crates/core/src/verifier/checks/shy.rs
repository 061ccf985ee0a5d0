use super::{interval, line, pool_maps, pt, show_map, show_maps, tuples, Fm, Products};
use crate::adjacency::ProductKind;
use crate::maps::{is_shy, shy_violation, DigitalMap};
use crate::multivalued::shy_equivalences;
use crate::verifier::families::{graph_pool, surjections};
use crate::verifier::{require, Checked, Ctx};

fn continuous_surjections(n: usize) -> Vec<Fm> {
    pool_maps(graph_pool(n), surjections).into_iter().filter(|f| f.map.is_continuous()).collect()
}

pub(super) fn four_conditions(ctx: &mut Ctx) -> Checked {
    for f in continuous_surjections(4) {
        ctx.tick()?;
        let e = shy_equivalences(&f.map)?;
        require!(e.agree(), "{e:?} for {}", show_map(&f.map));
    }
    Ok(())
}

pub(super) fn shy_local_iso(ctx: &mut Ctx) -> Checked {
    for f in continuous_surjections(4) {
        ctx.tick()?;
        let f = &f.map;
        if is_shy(f) {
            require!(
                f.is_isomorphism() == f.is_locally_one_to_one(),
                "shy, isomorphism {}, locally one-to-one {}: {}",
                f.is_isomorphism(),
                f.is_locally_one_to_one(),
                show_map(f)
            );
        }
    }
    Ok(())
}

/// Products of surjections: pairs over the three-point pool, triples over the two-point pool.
fn over_surjection_products(
    ctx: &mut Ctx,
    kind: impl Fn(usize) -> ProductKind,
    mut claim: impl FnMut(&[&DigitalMap], &DigitalMap) -> Checked,
) -> Checked {
    for (n, v) in [(3, 2), (2, 3)] {
        let pool = graph_pool(n);
        let maps = pool_maps(pool, surjections);
        let mut products = Products::new(pool);
        let kind = kind(v);
        for ids in tuples(maps.len(), v) {
            ctx.tick()?;
            let fs: Vec<&Fm> = ids.iter().map(|&i| &maps[i]).collect();
            let f = products.map(&fs, kind);
            let factors: Vec<&DigitalMap> = fs.iter().map(|m| &m.map).collect();
            claim(&factors, &f)?;
        }
    }
    Ok(())
}

fn shy_iff(ctx: &mut Ctx, kind: impl Fn(usize) -> ProductKind) -> Checked {
    over_surjection_products(ctx, kind, |fs, f| {
        let (whole, parts) = (is_shy(f), fs.iter().all(|g| is_shy(g)));
        require!(whole == parts, "product shy {whole}, factors {parts}: {}", show_maps(fs));
        Ok(())
    })
}

pub(super) fn np_shy(ctx: &mut Ctx) -> Checked {
    shy_iff(ctx, ProductKind::Np)
}

pub(super) fn cartesian_shy(ctx: &mut Ctx) -> Checked {
    shy_iff(ctx, |_| ProductKind::Cartesian)
}

pub(super) fn tensor_shy_factors(ctx: &mut Ctx) -> Checked {
    over_surjection_products(
        ctx,
        |_| ProductKind::Tensor,
        |fs, f| {
            if is_shy(f) {
                let bad = fs.iter().find(|g| !is_shy(g));
                require!(
                    bad.is_none(),
                    "shy tensor product with non-shy factor {}: {}",
                    show_map(bad.expect("factor")),
                    show_maps(fs)
                );
            }
            Ok(())
        },
    )
}

pub(super) fn lex_shy(ctx: &mut Ctx) -> Checked {
    over_surjection_products(
        ctx,
        |_| ProductKind::Lex,
        |fs, f| {
            if fs.iter().all(|g| is_shy(g)) {
                require!(is_shy(f), "shy factors, product fails with {:?}: {}", shy_violation(f), show_maps(fs));
            }
            Ok(())
        },
    )
}

pub(super) fn tensor_shy_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    let zero = DigitalMap::constant(i.clone(), line(&[0]), &pt(&[0]))?;
    let id = DigitalMap::identity(i);
    require!(is_shy(&zero) && is_shy(&id), "factors should be shy");
    let f = DigitalMap::product(&[&zero, &id], ProductKind::Tensor)?;
    require!(!f.is_continuous() && !is_shy(&f), "{} should be discontinuous", show_map(&f));
    Ok(())
}

pub(super) fn lex_shy_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let point = line(&[0]);
    let f1 = DigitalMap::constant(interval(0, 1), point.clone(), &pt(&[0]))?;
    let f2 = DigitalMap::constant(line(&[0, 2]), point, &pt(&[0]))?;
    require!(is_shy(&f1) && !is_shy(&f2), "factor verdicts are wrong");
    let e = shy_equivalences(&f2)?;
    require!(!e.shy && e.agree(), "conditions for {}: {e:?}", show_map(&f2));
    let f = DigitalMap::product(&[&f1, &f2], ProductKind::Lex)?;
    require!(is_shy(&f), "{} should be shy: {:?}", show_map(&f), shy_violation(&f));
    Ok(())
}
