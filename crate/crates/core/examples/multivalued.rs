//! Multivalued maps: weak and strong continuity, subdivisions and generators.

use digitop::{is_continuous_multimap, subdivide, MultiMap, Point, Space, DEFAULT_BUDGET};

fn main() -> digitop::Result<()> {
    let i = Space::interval(0, 1)?.into_arc();
    let gap = Space::line(&[0, 2])?.into_arc();
    let p = |v: i64| Point::from([v]);

    let cases = [
        ("0 -> {0}, 1 -> {0,2}", vec![(p(0), vec![p(0)]), (p(1), vec![p(0), p(2)])]),
        ("0 -> {0,1}, 1 -> {1}", vec![(p(0), vec![p(0), p(1)]), (p(1), vec![p(1)])]),
    ];
    for (name, pairs) in cases {
        let cod = if pairs.iter().flat_map(|(_, v)| v).any(|q| q == &p(2)) { gap.clone() } else { i.clone() };
        let f = MultiMap::from_pairs(i.clone(), cod, pairs)?;
        println!(
            "{name}: weak {}, strong {}, connectivity preserving {}",
            f.has_weak_continuity(),
            f.has_strong_continuity(),
            f.is_connectivity_preserving()
        );
        println!("  {:?}", is_continuous_multimap(&f, 3, DEFAULT_BUDGET)?);
    }

    for r in 1..=3 {
        let s = subdivide(&i, r)?;
        println!("S([0,1], {r}) has {} points", s.len());
    }
    Ok(())
}
