//! Homotopies between maps and homotopy equivalence of small images.

use digitop::{are_homotopic, homotopy_equivalent, is_homotopy, DigitalMap, Point, Search, Space, DEFAULT_BUDGET};

fn main() -> digitop::Result<()> {
    let i = Space::interval(0, 2)?.into_arc();
    let id = DigitalMap::identity(i.clone());
    let zero = DigitalMap::constant(i.clone(), i.clone(), &Point::from([0]))?;
    match are_homotopic(&id, &zero, None, DEFAULT_BUDGET)? {
        Search::Found(h) => {
            println!("id ~ 0 on [0,2] in {} steps, checked: {}", h.length(), is_homotopy(&id, &zero, &h, None));
            for t in 0..=h.length() {
                println!("  t={t}: {:?}", h.step(t).table());
            }
        }
        other => println!("no homotopy: {}", other.is_found()),
    }

    // Two points with no edge cannot be contracted.
    let gap = Space::line(&[0, 2])?.into_arc();
    let id = DigitalMap::identity(gap.clone());
    let zero = DigitalMap::constant(gap.clone(), gap.clone(), &Point::from([0]))?;
    println!("id ~ 0 on {{0,2}}: {}", are_homotopic(&id, &zero, None, DEFAULT_BUDGET)?.is_found());

    let point = Space::line(&[0])?.into_arc();
    let found = homotopy_equivalent(&i, &point, None, DEFAULT_BUDGET)?;
    println!("[0,2] has the homotopy type of a point: {}", found.is_found());
    Ok(())
}
