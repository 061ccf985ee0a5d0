use std::sync::Arc;

use super::{interval, pt, tuples, Products};
use crate::adjacency::ProductKind;
use crate::maps::{approximate_fixed_point, has_afpp, AfppOutcome, DigitalMap};
use crate::space::Space;
use crate::verifier::families::{all_maps, graph_pool};
use crate::verifier::{require, Checked, Ctx, Stop, SEARCH_BUDGET};

fn afpp(ctx: &mut Ctx, x: &Arc<Space>) -> Result<bool, Stop> {
    ctx.tick()?;
    match has_afpp(x, SEARCH_BUDGET) {
        AfppOutcome::Holds { .. } => Ok(true),
        AfppOutcome::Fails(_) => Ok(false),
        AfppOutcome::BudgetExceeded => Err(Stop::Budget),
    }
}

pub(super) fn interval_has_afpp(ctx: &mut Ctx) -> Checked {
    let i = interval(0, 1);
    let maps = all_maps(&i, &i);
    require!(maps.len() == 4, "expected 4 self-maps, saw {}", maps.len());
    for f in &maps {
        ctx.tick()?;
        require!(f.is_continuous() && approximate_fixed_point(f)?.is_some(), "{f:?} has no approximate fixed point");
    }
    require!(afpp(ctx, &i)?, "search misses the property on [0,1]");
    Ok(())
}

pub(super) fn np_afpp_factors(ctx: &mut Ctx) -> Checked {
    let mut factor = std::collections::HashMap::new();
    for (pool, v) in [(graph_pool(3), 2), (graph_pool(2), 3)] {
        let mut products = Products::new(pool);
        for ids in tuples(pool.len(), v) {
            for u in 1..=v {
                let x = products.get(&ids, ProductKind::Np(u));
                if !afpp(ctx, &x)? {
                    continue;
                }
                for &i in &ids {
                    let key = (pool[i].len(), i, v);
                    let holds = match factor.get(&key) {
                        Some(&h) => h,
                        None => {
                            let h = afpp(ctx, &pool[i])?;
                            factor.insert(key, h);
                            h
                        }
                    };
                    require!(holds, "{x:?} has the property under NP{u} but factor {:?} lacks it", pool[i]);
                }
            }
        }
    }
    Ok(())
}

fn square_without_afpp(ctx: &mut Ctx, kind: ProductKind, flip_both: bool) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    require!(afpp(ctx, &i)?, "[0,1] lacks the property");
    let f = DigitalMap::product(
        &[
            &DigitalMap::from_table(i.clone(), i.clone(), vec![1, 0])?,
            &DigitalMap::from_table(i.clone(), i.clone(), if flip_both { vec![1, 0] } else { vec![0, 1] })?,
        ],
        kind,
    )?;
    require!(f.apply(&pt(&[0, 0]))? == &pt(&[1, if flip_both { 1 } else { 0 }]), "unexpected map {f:?}");
    require!(f.is_continuous(), "{f:?} is discontinuous");
    require!(approximate_fixed_point(&f)?.is_none(), "{f:?} has an approximate fixed point");
    require!(!afpp(ctx, f.domain())?, "search finds the property on {:?}", f.domain());
    Ok(())
}

pub(super) fn tensor_square_lacks_afpp(ctx: &mut Ctx) -> Checked {
    square_without_afpp(ctx, ProductKind::Tensor, false)
}

pub(super) fn cartesian_square_lacks_afpp(ctx: &mut Ctx) -> Checked {
    square_without_afpp(ctx, ProductKind::Cartesian, true)
}

pub(super) fn lex_afpp_factor(ctx: &mut Ctx) -> Checked {
    for (pool, v) in [(graph_pool(4), 2), (graph_pool(2), 3)] {
        let mut products = Products::new(pool);
        for ids in tuples(pool.len(), v) {
            let Some(&k) = ids.iter().find(|&&i| pool[i].len() > 1 && pool[i].is_connected()) else { continue };
            if ids.iter().map(|&i| pool[i].len()).product::<usize>() > 8 {
                continue;
            }
            let x = products.get(&ids, ProductKind::Lex);
            if afpp(ctx, &x)? {
                require!(afpp(ctx, &pool[k])?, "{x:?} has the property but {:?} lacks it", pool[k]);
            }
        }
    }
    Ok(())
}
