use std::sync::Arc;

use super::{pt, show_map};
use crate::adjacency::{domination_witness, Adjacency};
use crate::lattice::DigitalImage;
use crate::maps::DigitalMap;
use crate::space::Space;
use crate::verifier::families::{all_tables, subsets};
use crate::verifier::{require, Checked, Ctx};

fn adj(spec: &str, dim: usize) -> crate::Result<Adjacency> {
    Adjacency::parse(spec, dim)
}

fn window(lo: i64, hi: i64, dim: usize) -> DigitalImage {
    DigitalImage::window(&vec![lo; dim], &vec![hi; dim]).expect("nonempty window")
}

/// Every adjacent-or-not verdict agrees on every pair of the window.
fn agree(ctx: &mut Ctx, a: &Adjacency, b: &Adjacency, domain: &DigitalImage) -> Checked {
    let pts = domain.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            ctx.tick()?;
            let (x, y) = (a.adjacent(p, q)?, b.adjacent(p, q)?);
            require!(x == y, "{a} says {x} but {b} says {y} for {p} and {q}");
        }
    }
    Ok(())
}

pub(super) fn cartesian_is_np1(ctx: &mut Ctx) -> Checked {
    let cases = [
        ("X(c1,c1)", "NP1(c1,c1)", window(0, 2, 2)),
        ("X(c2@2,c1)", "NP1(c2@2,c1)", window(0, 2, 3)),
        ("X(c1@2,c2@2)", "NP1(c1@2,c2@2)", window(0, 1, 4)),
        ("X(c1,c1,c1)", "NP1(c1,c1,c1)", window(-1, 1, 3)),
        ("X(c1@1,L(c1,c1))", "NP1(c1@1,L(c1,c1))", window(0, 2, 3)),
    ];
    for (x, np, dom) in cases {
        agree(ctx, &adj(x, dom.dim())?, &adj(np, dom.dim())?, &dom)?;
    }
    Ok(())
}

pub(super) fn lex_reaches_far(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let lex = adj("L(c1,c1)", 2)?;
    let cart = adj("X(c1,c1)", 2)?;
    let (p, q) = (pt(&[0, 0]), pt(&[1, 2]));
    require!(lex.adjacent(&p, &q)?, "(0,0) and (1,2) not adjacent under {lex}");
    require!(!cart.adjacent(&p, &q)?, "(0,0) and (1,2) adjacent under {cart}");
    for k in -9..=9 {
        ctx.tick()?;
        require!(lex.adjacent(&p, &pt(&[1, k]))?, "(0,0) and (1,{k}) not adjacent under {lex}");
    }
    Ok(())
}

/// `stronger` dominates `weaker` on the window: no witness pair.
fn expect_dominates(ctx: &mut Ctx, stronger: &str, weaker: &str, dom: &DigitalImage) -> Checked {
    ctx.tick()?;
    let (a, b) = (adj(stronger, dom.dim())?, adj(weaker, dom.dim())?);
    let w = domination_witness(&a, &b, dom)?;
    require!(w.is_none(), "{a} does not dominate {b}: {:?}", w.expect("witness"));
    Ok(())
}

pub(super) fn domination_bullets(ctx: &mut Ctx) -> Checked {
    for n in 1..=3 {
        let dom = window(0, 2, n);
        for u in 1..=n {
            for v in u..=n {
                expect_dominates(ctx, &format!("c{u}"), &format!("c{v}"), &dom)?;
            }
        }
    }
    let pair = window(0, 2, 2);
    let triple = window(0, 1, 3);
    for (fs, dom) in [("c1,c1", &pair), ("c1,c1,c1", &triple)] {
        let v = fs.split(',').count();
        for u in 1..=v {
            for w in u..=v {
                expect_dominates(ctx, &format!("NP{u}({fs})"), &format!("NP{w}({fs})"), dom)?;
            }
            expect_dominates(ctx, &format!("NP{u}({fs})"), &format!("L({fs})"), dom)?;
        }
        expect_dominates(ctx, &format!("T({fs})"), &format!("NP{v}({fs})"), dom)?;
        expect_dominates(ctx, &format!("T({fs})"), &format!("L({fs})"), dom)?;
        expect_dominates(ctx, &format!("X({fs})"), &format!("L({fs})"), dom)?;
    }
    let wide = window(0, 1, 4);
    expect_dominates(ctx, "T(c1@2,c2@2)", "L(c1@2,c2@2)", &wide)?;
    expect_dominates(ctx, "X(c2@2,c1@2)", "L(c2@2,c1@2)", &wide)?;
    Ok(())
}

pub(super) fn incomparable_tensors(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let a = adj("T(c2@3,c2@3)", 6)?;
    let b = adj("T(c1@3,c3@3)", 6)?;
    let p = pt(&[0, 0, 0, 0, 0, 0]);
    let q = pt(&[1, 1, 0, 1, 1, 0]);
    let r = pt(&[1, 0, 0, 1, 1, 1]);
    require!(a.adjacent(&p, &q)? && !b.adjacent(&p, &q)?, "p, q do not separate {a} from {b}");
    require!(b.adjacent(&p, &r)? && !a.adjacent(&p, &r)?, "p, r do not separate {b} from {a}");
    let dom = window(0, 1, 6);
    ctx.tick()?;
    require!(domination_witness(&a, &b, &dom)?.is_some(), "{a} dominates {b} on [0,1]^6");
    ctx.tick()?;
    require!(domination_witness(&b, &a, &dom)?.is_some(), "{b} dominates {a} on [0,1]^6");
    Ok(())
}

const FOUR_DIM: &[&str] = &[
    "c1",
    "c2",
    "c3",
    "c4",
    "X(c1@2,c1@2)",
    "X(c2@2,c2@2)",
    "NP2(c1@2,c1@2)",
    "NP2(c2@2,c1@2)",
    "T(c1@2,c1@2)",
    "T(c2@2,c2@2)",
    "T(c1@1,c3@3)",
    "L(c1@2,c1@2)",
    "L(c2@2,c2@2)",
    "L(c1@1,c1@3)",
    "X(c1@1,c1@1,c2@2)",
    "T(c1@1,c1@1,c1@2)",
];

pub(super) fn domination_transitive(ctx: &mut Ctx) -> Checked {
    let dom = window(0, 1, 4);
    let adjs = FOUR_DIM.iter().map(|s| adj(s, 4)).collect::<crate::Result<Vec<_>>>()?;
    let n = adjs.len();
    let mut table = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            ctx.tick()?;
            table[i][j] = domination_witness(&adjs[i], &adjs[j], &dom)?.is_none();
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ctx.tick()?;
                if table[i][j] && table[j][k] {
                    require!(
                        table[i][k],
                        "{} >= {} >= {} but not {} >= {}",
                        adjs[i],
                        adjs[j],
                        adjs[k],
                        adjs[i],
                        adjs[k]
                    );
                }
            }
        }
    }
    Ok(())
}

const SQUARE: &[&str] = &["c1", "c2", "T(c1,c1)", "L(c1,c1)", "X(c1@1,c1@1)"];

pub(super) fn domination_monotone(ctx: &mut Ctx) -> Checked {
    let square = window(0, 1, 2);
    // Each subset of the square under each adjacency; index [subset][adjacency].
    let spaces: Vec<Vec<Arc<Space>>> = subsets(&Space::new(square, adj("c1", 2)?)?)
        .into_iter()
        .map(|img| {
            SQUARE
                .iter()
                .map(|s| Ok(Space::new(img.clone(), adj(s, 2)?)?.into_arc()))
                .collect::<crate::Result<Vec<_>>>()
        })
        .collect::<crate::Result<_>>()?;
    let a = SQUARE.len();
    let dominated =
        |s: &[Arc<Space>], i: usize, j: usize| domination_witness(s[i].adjacency(), s[j].adjacency(), s[i].image());
    for xs in &spaces {
        for ys in &spaces {
            for table in all_tables(&xs[0], &ys[0]) {
                let cont: Vec<Vec<bool>> = (0..a)
                    .map(|k| {
                        (0..a)
                            .map(|l| {
                                DigitalMap::from_table_unchecked(xs[k].clone(), ys[l].clone(), table.clone())
                                    .is_continuous()
                            })
                            .collect()
                    })
                    .collect();
                for k in 0..a {
                    for l1 in 0..a {
                        if !cont[k][l1] {
                            continue;
                        }
                        for l2 in 0..a {
                            ctx.tick()?;
                            if dominated(ys, l1, l2)?.is_none() {
                                let f = DigitalMap::from_table_unchecked(xs[k].clone(), ys[l2].clone(), table.clone());
                                require!(cont[k][l2], "continuity lost when the codomain weakens: {}", show_map(&f));
                            }
                        }
                        for k2 in 0..a {
                            ctx.tick()?;
                            if dominated(xs, k2, k)?.is_none() {
                                let f = DigitalMap::from_table_unchecked(xs[k2].clone(), ys[l1].clone(), table.clone());
                                require!(cont[k2][l1], "continuity lost when the domain strengthens: {}", show_map(&f));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
