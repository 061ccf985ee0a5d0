use std::collections::HashSet;
use std::sync::Arc;

use super::{interval, line, pool_maps, pt, space, tuples, Products};
use crate::adjacency::ProductKind;
use crate::lattice::{DigitalImage, Point};
use crate::maps::DigitalMap;
use crate::multivalued::{
    all_generators, induced_multimap, is_continuous_multimap, is_multivalued_retraction, refine_generator, subdivide,
    MultiContinuity, MultiMap, Subdivision,
};
use crate::space::Space;
use crate::verifier::families::{all_maps, continuous_maps, embedded_domains, graph_pool, multi_tables, subsets};
use crate::verifier::{require, Checked, Ctx, Stop, SEARCH_BUDGET};

fn multimaps(doms: &[Arc<Space>], cods: &[Arc<Space>]) -> Vec<MultiMap> {
    let mut out = Vec::new();
    for x in doms {
        for y in cods {
            for t in multi_tables(x, y) {
                out.push(MultiMap::from_table(x.clone(), y.clone(), t).expect("valid table"));
            }
        }
    }
    out
}

/// Domains of at most two points into at most three, and the reverse.
fn mixed_multimaps() -> Vec<MultiMap> {
    let (p2, p3) = (graph_pool(2), graph_pool(3));
    let mut out = multimaps(p2, p3);
    out.extend(multimaps(&p3[p2.len()..], p2));
    out
}

fn show(f: &MultiMap) -> String {
    format!("{f:?} from {:?} to {:?}", f.domain(), f.codomain())
}

/// Images of connected subsets are connected, checked subset by subset.
fn preserves_connected_sets(f: &MultiMap) -> bool {
    let x = f.domain();
    (1u32..1 << x.len()).all(|mask| {
        let s: Vec<usize> = (0..x.len()).filter(|&i| mask >> i & 1 == 1).collect();
        !x.subset_connected(&s) || f.codomain().subset_connected(&f.image_of_indices(&s))
    })
}

fn point_images_connected(f: &MultiMap) -> bool {
    (0..f.domain().len()).all(|i| f.codomain().subset_connected(f.values_at(i)))
}

pub(super) fn connectivity_by_adjacency(ctx: &mut Ctx) -> Checked {
    for f in mixed_multimaps() {
        ctx.tick()?;
        let by_sets = preserves_connected_sets(&f);
        require!(
            by_sets == f.is_connectivity_preserving(),
            "subset test {by_sets}, pointwise test {}: {}",
            !by_sets,
            show(&f)
        );
    }
    Ok(())
}

pub(super) fn preserving_is_weak_plus_connected(ctx: &mut Ctx) -> Checked {
    for f in mixed_multimaps() {
        ctx.tick()?;
        let by_sets = preserves_connected_sets(&f);
        let split = f.has_weak_continuity() && point_images_connected(&f);
        require!(by_sets == split, "preserving {by_sets}, weak with connected values {split}: {}", show(&f));
    }
    Ok(())
}

pub(super) fn strong_connected_preserves(ctx: &mut Ctx) -> Checked {
    for f in mixed_multimaps() {
        ctx.tick()?;
        if f.has_strong_continuity() && point_images_connected(&f) {
            require!(preserves_connected_sets(&f), "strong with connected values but not preserving: {}", show(&f));
        }
    }
    Ok(())
}

/// Multimaps induced by every continuous map on `S(X, r)`, `r <= 2`, for the
/// embedded domains and codomains of at most three points, without repeats.
fn generated(ctx: &mut Ctx, mut claim: impl FnMut(&MultiMap) -> Checked) -> Checked {
    for x in embedded_domains() {
        for y in graph_pool(3) {
            let mut seen = HashSet::new();
            for r in 1..=2 {
                let sub = subdivide(&x, r)?;
                for g in continuous_maps(sub.space(), y) {
                    let f = induced_multimap(&g, &sub)?;
                    if seen.insert(f.table().to_vec()) {
                        ctx.tick()?;
                        claim(&f)?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn continuous_preserves_connectivity(ctx: &mut Ctx) -> Checked {
    generated(ctx, |f| {
        require!(f.is_connectivity_preserving(), "continuous but not preserving: {}", show(f));
        Ok(())
    })
}

pub(super) fn continuous_point_images(ctx: &mut Ctx) -> Checked {
    generated(ctx, |f| {
        require!(point_images_connected(f), "continuous with a disconnected value set: {}", show(f));
        require!(preserves_connected_sets(f), "continuous with a disconnected image of a connected set: {}", show(f));
        Ok(())
    })
}

/// The first `r` with a generator, after confirming by brute force that no
/// coarser subdivision has one.
fn first_generator(ctx: &mut Ctx, f: &MultiMap, r_max: usize) -> Result<Option<usize>, Stop> {
    for r in 1..=r_max {
        ctx.tick()?;
        let sub = subdivide(f.domain(), r)?;
        let brute = all_maps(sub.space(), f.codomain())
            .into_iter()
            .any(|g| g.is_continuous() && induced_multimap(&g, &sub).is_ok_and(|h| &h == f));
        // Earlier radii had no generator, so a hit from the search is at `r`.
        let searched = is_continuous_multimap(f, r, SEARCH_BUDGET)?.is_generated();
        require!(brute == searched, "search says {searched}, brute force says {brute} at r = {r} for {}", show(f));
        if brute {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

pub(super) fn one_point_onto_interval(ctx: &mut Ctx) -> Checked {
    let point = line(&[0]);
    for (hi, expect) in [(1, 2), (2, 3), (3, 4)] {
        let y = interval(0, hi);
        let f = MultiMap::from_table(point.clone(), y.clone(), vec![(0..y.len()).collect()])?;
        let r = first_generator(ctx, &f, 4)?;
        require!(r == Some(expect), "onto [0,{hi}] first generated at {r:?}, expected r = {expect}");
    }
    Ok(())
}

fn unit_map(table: Vec<Vec<i64>>, cod: &Arc<Space>) -> crate::Result<MultiMap> {
    let i = interval(0, 1);
    let pairs = table.into_iter().enumerate().map(|(x, ys)| (pt(&[x as i64]), ys.iter().map(|&y| pt(&[y])).collect()));
    MultiMap::from_pairs(i, cod.clone(), pairs)
}

pub(super) fn weak_strong_disconnected_values(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let f = unit_map(vec![vec![0, 2], vec![1]], &interval(0, 2))?;
    require!(f.has_weak_continuity() && f.has_strong_continuity(), "expected weak and strong: {}", show(&f));
    require!(!f.is_connectivity_preserving(), "value set {{0,2}} counted as connected");
    let g = MultiMap::from_table(line(&[0]), line(&[0, 2]), vec![vec![0, 1]])?;
    require!(!g.is_connectivity_preserving() && !preserves_connected_sets(&g), "{} preserves connectivity", show(&g));
    Ok(())
}

pub(super) fn weak_not_strong(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let f = unit_map(vec![vec![0, 1], vec![2]], &interval(0, 2))?;
    require!(f.has_weak_continuity(), "expected weak continuity: {}", show(&f));
    let bad = f.strong_violation();
    require!(bad == Some((pt(&[0]), pt(&[1]))), "expected strong failure at 0, 1, got {bad:?}");
    Ok(())
}

/// Whether removing one point disconnects the space.
fn has_cut_point(s: &Space) -> bool {
    (0..s.len()).any(|k| {
        let rest: Vec<usize> = (0..s.len()).filter(|&i| i != k).collect();
        !s.subset_connected(&rest)
    })
}

pub(super) fn diagonal_subdivision_cut(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let diagonal = space(&[&[0, 0], &[1, 1]], "c2")?;
    let flat = space(&[&[0, 0], &[1, 0]], "c2")?;
    let (d, f) = (subdivide(&diagonal, 2)?, subdivide(&flat, 2)?);
    require!(d.len() == 8 && f.len() == 8, "sizes {} and {}", d.len(), f.len());
    require!(d.space().is_connected() && f.space().is_connected(), "subdivisions should be connected");
    require!(has_cut_point(d.space()), "no cut point in {:?}", d.space());
    require!(!has_cut_point(f.space()), "cut point in {:?}", f.space());
    Ok(())
}

pub(super) fn single_valued_agree(ctx: &mut Ctx) -> Checked {
    for fm in pool_maps(graph_pool(3), all_maps) {
        ctx.tick()?;
        let m = MultiMap::from_map(&fm.map);
        let (c, w, s) = (fm.map.is_continuous(), m.has_weak_continuity(), m.has_strong_continuity());
        require!(c == w && w == s, "continuous {c}, weak {w}, strong {s}: {:?}", fm.map);
    }
    Ok(())
}

/// A multimap between pool members.
struct Mm {
    dom: usize,
    cod: usize,
    map: MultiMap,
}

fn pool_multimaps(doms: usize, cods: usize) -> Vec<Mm> {
    let pool = graph_pool(3);
    let mut out = Vec::new();
    for (i, x) in pool.iter().take(doms).enumerate() {
        for (j, y) in pool.iter().take(cods).enumerate() {
            for t in multi_tables(x, y) {
                out.push(Mm {
                    dom: i,
                    cod: j,
                    map: MultiMap::from_table(x.clone(), y.clone(), t).expect("valid table"),
                });
            }
        }
    }
    out
}

/// Pairs of multimaps from at most two points into at most three, and
/// triples between images of at most two points.
fn over_multi_products(
    ctx: &mut Ctx,
    kind: impl Fn(usize) -> ProductKind,
    mut claim: impl FnMut(&[&MultiMap], &MultiMap) -> Checked,
) -> Checked {
    let (two, three) = (graph_pool(2).len(), graph_pool(3).len());
    let mut products = Products::new(graph_pool(3));
    for (maps, v) in [(pool_multimaps(two, three), 2), (pool_multimaps(two, two), 3)] {
        let kind = kind(v);
        for ids in tuples(maps.len(), v) {
            ctx.tick()?;
            let ms: Vec<&Mm> = ids.iter().map(|&i| &maps[i]).collect();
            let doms: Vec<usize> = ms.iter().map(|m| m.dom).collect();
            let cods: Vec<usize> = ms.iter().map(|m| m.cod).collect();
            let factors: Vec<&MultiMap> = ms.iter().map(|m| &m.map).collect();
            let f = MultiMap::product_into(&factors, products.get(&doms, kind), products.get(&cods, kind));
            claim(&factors, &f)?;
        }
    }
    Ok(())
}

fn show_all(fs: &[&MultiMap]) -> String {
    fs.iter().map(|f| show(f)).collect::<Vec<_>>().join("; ")
}

fn product_iff(ctx: &mut Ctx, kind: impl Fn(usize) -> ProductKind, prop: fn(&MultiMap) -> bool) -> Checked {
    over_multi_products(ctx, kind, |fs, f| {
        let (whole, parts) = (prop(f), fs.iter().all(|g| prop(g)));
        require!(whole == parts, "product {whole}, factors {parts}: {}", show_all(fs));
        Ok(())
    })
}

fn product_to_factors(ctx: &mut Ctx, kind: ProductKind, prop: fn(&MultiMap) -> bool) -> Checked {
    over_multi_products(
        ctx,
        |_| kind,
        |fs, f| {
            if prop(f) {
                require!(fs.iter().all(|g| prop(g)), "{kind} product has it but a factor lacks it: {}", show_all(fs));
            }
            Ok(())
        },
    )
}

fn weak(f: &MultiMap) -> bool {
    f.has_weak_continuity()
}

fn strong(f: &MultiMap) -> bool {
    f.has_strong_continuity()
}

fn preserving(f: &MultiMap) -> bool {
    f.is_connectivity_preserving()
}

pub(super) fn np_weak(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, ProductKind::Np, weak)
}

pub(super) fn tensor_weak_factors(ctx: &mut Ctx) -> Checked {
    product_to_factors(ctx, ProductKind::Tensor, weak)
}

pub(super) fn cartesian_weak(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, |_| ProductKind::Cartesian, weak)
}

pub(super) fn np_strong(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, ProductKind::Np, strong)
}

pub(super) fn tensor_strong_factors(ctx: &mut Ctx) -> Checked {
    product_to_factors(ctx, ProductKind::Tensor, strong)
}

pub(super) fn cartesian_strong(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, |_| ProductKind::Cartesian, strong)
}

pub(super) fn np_connectivity(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, ProductKind::Np, preserving)
}

pub(super) fn tensor_connectivity_factors(ctx: &mut Ctx) -> Checked {
    product_to_factors(ctx, ProductKind::Tensor, preserving)
}

pub(super) fn cartesian_connectivity(ctx: &mut Ctx) -> Checked {
    product_iff(ctx, |_| ProductKind::Cartesian, preserving)
}

/// Identity times the constant zero on `[0,1]`, as multimaps.
fn id_times_zero() -> crate::Result<(MultiMap, MultiMap)> {
    let i = interval(0, 1);
    Ok((
        MultiMap::from_map(&DigitalMap::identity(i.clone())),
        MultiMap::from_map(&DigitalMap::constant(i.clone(), i, &pt(&[0]))?),
    ))
}

pub(super) fn tensor_weak_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (id, zero) = id_times_zero()?;
    require!(weak(&id) && weak(&zero), "factors should have weak continuity");
    let f = MultiMap::product(&[&id, &zero], ProductKind::Tensor)?;
    let bad = f.weak_violation();
    require!(bad == Some((pt(&[0, 0]), pt(&[1, 1]))), "expected a weak failure at (0,0), (1,1), got {bad:?}");
    Ok(())
}

pub(super) fn tensor_strong_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (id, zero) = id_times_zero()?;
    require!(strong(&zero) && strong(&id), "factors should have strong continuity");
    let f = MultiMap::product(&[&zero, &id], ProductKind::Tensor)?;
    require!(!strong(&f) && !weak(&f), "{} should lack weak and strong continuity", show(&f));
    Ok(())
}

/// `x -> {0}` on `[0,1]` and the identity on `{0,2}`.
fn zero_and_gap_identity() -> crate::Result<(MultiMap, MultiMap)> {
    let i = interval(0, 1);
    let gap = line(&[0, 2]);
    Ok((
        MultiMap::from_map(&DigitalMap::constant(i.clone(), i, &pt(&[0]))?),
        MultiMap::from_map(&DigitalMap::identity(gap)),
    ))
}

pub(super) fn lex_product_lacks_both(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let (f1, f2) = zero_and_gap_identity()?;
    require!(weak(&f1) && strong(&f1) && weak(&f2) && strong(&f2), "factors should have both");
    let f = MultiMap::product(&[&f1, &f2], ProductKind::Lex)?;
    require!(!weak(&f) && !strong(&f), "{} should lack both", show(&f));
    let (p, q) = (pt(&[0, 0]), pt(&[1, 2]));
    require!(f.values(&p)? == [pt(&[0, 0])] && f.values(&q)? == [pt(&[0, 2])], "unexpected values at (0,0), (1,2)");
    let dom = f.domain();
    require!(
        dom.adjacent(dom.index_of(&p).expect("in X"), dom.index_of(&q).expect("in X")),
        "(0,0) and (1,2) not adjacent"
    );
    Ok(())
}

pub(super) fn lex_factor_lacks_both(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let i = interval(0, 1);
    let f1 = unit_map(vec![vec![0, 1], vec![0, 1]], &i)?;
    let f2 = unit_map(vec![vec![0], vec![2]], &line(&[0, 2]))?;
    require!(!weak(&f2) && !strong(&f2), "{} should lack both", show(&f2));
    let f = MultiMap::product(&[&f1, &f2], ProductKind::Lex)?;
    require!(weak(&f) && strong(&f), "{} should have both", show(&f));
    require!(f.values(&pt(&[0, 0]))? == f.values(&pt(&[1, 0]))?, "values at (0,0) and (1,0) differ");
    Ok(())
}

pub(super) fn tensor_connectivity_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let f = MultiMap::from_table(line(&[0]), interval(0, 1), vec![vec![0, 1]])?;
    require!(preserving(&f), "{} should preserve connectivity", show(&f));
    let ff = MultiMap::product(&[&f, &f], ProductKind::Tensor)?;
    require!(!preserving(&ff), "{} should not preserve connectivity", show(&ff));
    require!(!ff.codomain().subset_connected(ff.values_at(0)), "[0,1]^2 is tensor-connected");
    Ok(())
}

pub(super) fn lex_connectivity_example(ctx: &mut Ctx) -> Checked {
    ctx.tick()?;
    let f1 = MultiMap::from_table(line(&[0]), interval(0, 1), vec![vec![0, 1]])?;
    let f2 = MultiMap::from_table(line(&[0]), line(&[0, 2]), vec![vec![0, 1]])?;
    require!(preserving(&f1) && !preserving(&f2), "factor verdicts are wrong");
    let f = MultiMap::product(&[&f1, &f2], ProductKind::Lex)?;
    require!(f.values_at(0).len() == 4 && preserving(&f), "{} should preserve connectivity", show(&f));
    // The other direction: factors preserving, product not.
    let (g1, g2) = zero_and_gap_identity()?;
    let g = MultiMap::product(&[&g1, &g2], ProductKind::Lex)?;
    require!(preserving(&g1) && preserving(&g2) && !preserving(&g), "{} should not preserve connectivity", show(&g));
    Ok(())
}

/// What the bounded search establishes about one multimap.
enum Status {
    Generated {
        r: usize,
        sub: Subdivision,
        gen: DigitalMap,
    },
    /// Not connectivity preserving, hence not continuous.
    Discontinuous,
    /// Preserving, but no generator for `r <= 4`.
    Unknown,
}

fn classify(ctx: &mut Ctx, f: &MultiMap) -> Result<Status, Stop> {
    ctx.tick()?;
    if !f.is_connectivity_preserving() {
        return Ok(Status::Discontinuous);
    }
    match is_continuous_multimap(f, 4, SEARCH_BUDGET)? {
        MultiContinuity::Generated { r, generator: Some(gen) } => {
            Ok(Status::Generated { r, sub: subdivide(f.domain(), r)?, gen })
        }
        MultiContinuity::BudgetExceeded { .. } => Err(Stop::Budget),
        _ => Ok(Status::Unknown),
    }
}

struct Classified {
    map: MultiMap,
    status: Status,
}

/// Multimaps from the embedded domains into images of at most two points.
fn classified(ctx: &mut Ctx) -> Result<Vec<Classified>, Stop> {
    let mut out = Vec::new();
    for map in multimaps(&embedded_domains(), graph_pool(2)) {
        let status = classify(ctx, &map)?;
        out.push(Classified { map, status });
    }
    Ok(out)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The generator of `f` lifted to `S(X, r)`; `r` must be a multiple of its own.
fn lift(status: &Status, r: usize) -> crate::Result<DigitalMap> {
    let Status::Generated { r: own, sub, gen } = status else { unreachable!("only generated maps are lifted") };
    Ok(refine_generator(gen, sub, r / own)?.1)
}

/// `(z_1, ..., z_v) -> (f_1(z_1), ..., f_v(z_v))` on the subdivision of a product.
fn product_generator(sub: &Subdivision, gens: &[&DigitalMap], codomain: &Arc<Space>) -> crate::Result<DigitalMap> {
    DigitalMap::from_fn(sub.space().clone(), codomain.clone(), |z| {
        let mut out = Vec::new();
        let mut at = 0;
        for g in gens {
            let d = g.domain().dim();
            let part = Point::new(z.coords()[at..at + d].to_vec()).expect("nonempty block");
            at += d;
            out.extend_from_slice(g.apply(&part).expect("block lies in the factor subdivision").coords());
        }
        Point::new(out).expect("nonempty point")
    })
}

/// Checks that the product of the factor generators, lifted to a common
/// subdivision, generates the product multimap.
fn generated_product(a: &Classified, b: &Classified, f: &MultiMap, kind: ProductKind) -> Checked {
    let (Status::Generated { r: ra, .. }, Status::Generated { r: rb, .. }) = (&a.status, &b.status) else {
        return Ok(());
    };
    let r = ra * rb / gcd(*ra, *rb);
    let (ga, gb) = (lift(&a.status, r)?, lift(&b.status, r)?);
    let sub = subdivide(f.domain(), r)?;
    let g = product_generator(&sub, &[&ga, &gb], f.codomain())?;
    require!(
        g.is_continuous(),
        "{kind} product of generators at r = {r} is discontinuous: {}; {}",
        show(&a.map),
        show(&b.map)
    );
    require!(&induced_multimap(&g, &sub)? == f, "product of generators does not induce {}", show(f));
    Ok(())
}

fn over_classified_pairs(
    ctx: &mut Ctx,
    kind: ProductKind,
    mut claim: impl FnMut(&mut Ctx, &Classified, &Classified, &MultiMap) -> Checked,
) -> Checked {
    let maps = classified(ctx)?;
    for a in &maps {
        for b in &maps {
            ctx.tick()?;
            let f = MultiMap::product(&[&a.map, &b.map], kind)?;
            claim(ctx, a, b, &f)?;
        }
    }
    Ok(())
}

pub(super) fn cartesian_generated(ctx: &mut Ctx) -> Checked {
    over_classified_pairs(ctx, ProductKind::Cartesian, |_, a, b, f| generated_product(a, b, f, ProductKind::Cartesian))
}

pub(super) fn np_multi_continuity(ctx: &mut Ctx) -> Checked {
    over_classified_pairs(ctx, ProductKind::Np(2), |_, a, b, f| {
        generated_product(a, b, f, ProductKind::Np(2))?;
        if matches!(a.status, Status::Discontinuous) || matches!(b.status, Status::Discontinuous) {
            let found = is_continuous_multimap(f, 2, SEARCH_BUDGET)?;
            require!(
                !found.is_generated(),
                "product generated although a factor is not continuous: {}; {}",
                show(&a.map),
                show(&b.map)
            );
        }
        Ok(())
    })
}

pub(super) fn refinement(ctx: &mut Ctx) -> Checked {
    for c in classified(ctx)? {
        let Status::Generated { sub, gen, .. } = &c.status else { continue };
        for s in 2..=3 {
            ctx.tick()?;
            let (fine, g) = refine_generator(gen, sub, s)?;
            require!(fine.len() == sub.len() * s.pow(sub.base().dim() as u32), "refined size {}", fine.len());
            require!(g.is_continuous(), "refinement by {s} is discontinuous for {}", show(&c.map));
            require!(induced_multimap(&g, &fine)? == c.map, "refinement by {s} changes {}", show(&c.map));
        }
    }
    Ok(())
}

/// Locally one-to-one generators at a common `r` generate the product; with
/// `stays_local` the product generator must be locally one-to-one as well.
fn local_generators(ctx: &mut Ctx, kind: ProductKind, stays_local: bool) -> Checked {
    let maps: Vec<Classified> =
        classified(ctx)?.into_iter().filter(|c| matches!(c.status, Status::Generated { .. })).collect();
    let mut local = Vec::new();
    for c in &maps {
        let mut per_r = Vec::new();
        for r in 1..=2 {
            ctx.tick()?;
            let (_, gens) = ctx.settle(all_generators(&c.map, r, SEARCH_BUDGET)?)?.expect("enumeration completes");
            per_r.push(gens.into_iter().filter(DigitalMap::is_locally_one_to_one).collect::<Vec<_>>());
        }
        local.push(per_r);
    }
    for (a, la) in maps.iter().zip(&local) {
        for (b, lb) in maps.iter().zip(&local) {
            let f = MultiMap::product(&[&a.map, &b.map], kind)?;
            for r in 1..=2 {
                let sub = subdivide(f.domain(), r)?;
                for ga in &la[r - 1] {
                    for gb in &lb[r - 1] {
                        ctx.tick()?;
                        let g = product_generator(&sub, &[ga, gb], f.codomain())?;
                        let ok = g.is_continuous()
                            && (!stays_local || g.is_locally_one_to_one())
                            && induced_multimap(&g, &sub)? == f;
                        require!(
                            ok,
                            "{kind} product of locally one-to-one generators {ga:?} and {gb:?} fails for {}",
                            show(&f)
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn tensor_local_generators(ctx: &mut Ctx) -> Checked {
    local_generators(ctx, ProductKind::Tensor, true)
}

pub(super) fn lex_local_generators(ctx: &mut Ctx) -> Checked {
    local_generators(ctx, ProductKind::Lex, false)
}

/// A continuous multimap onto a subset, and whether it fixes that subset.
struct Retraction {
    map: MultiMap,
    subset: DigitalImage,
    r: usize,
    fixes: bool,
}

fn continuous_onto_subsets(ctx: &mut Ctx) -> Result<Vec<Retraction>, Stop> {
    let mut out = Vec::new();
    for x in embedded_domains() {
        for a in subsets(&x) {
            let target = x.subspace(&a)?.into_arc();
            for t in multi_tables(&x, &target) {
                let map = MultiMap::from_table(x.clone(), target.clone(), t)?;
                let Status::Generated { r, .. } = classify(ctx, &map)? else { continue };
                let fixes =
                    a.points().iter().enumerate().all(|(k, p)| map.values_at(x.index_of(p).expect("subset")) == [k]);
                out.push(Retraction { map, subset: a.clone(), r, fixes });
            }
        }
    }
    Ok(out)
}

fn multi_retractions(ctx: &mut Ctx, kind: ProductKind, iff: bool) -> Checked {
    let maps = continuous_onto_subsets(ctx)?;
    for a in &maps {
        for b in &maps {
            if !iff && !(a.fixes && b.fixes) {
                continue;
            }
            ctx.tick()?;
            let f = MultiMap::product(&[&a.map, &b.map], kind)?;
            let subset = DigitalImage::product(&[&a.subset, &b.subset])?;
            let r = a.r * b.r / gcd(a.r, b.r);
            let whole = is_multivalued_retraction(&f, &subset, r, SEARCH_BUDGET)?;
            if let MultiContinuity::BudgetExceeded { .. } = whole {
                return Err(Stop::Budget);
            }
            let parts = a.fixes && b.fixes;
            require!(
                whole.is_generated() == parts,
                "{kind} product retraction {}, factors {parts}: {}",
                whole.is_generated(),
                show(&f)
            );
        }
    }
    Ok(())
}

pub(super) fn np_multi_retractions(ctx: &mut Ctx) -> Checked {
    multi_retractions(ctx, ProductKind::Np(2), true)
}

pub(super) fn cartesian_multi_retractions(ctx: &mut Ctx) -> Checked {
    multi_retractions(ctx, ProductKind::Cartesian, false)
}
