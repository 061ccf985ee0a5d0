//! Shy maps and the conditions equivalent to shyness.

use digitop::{is_shy, shy_equivalences, DigitalMap, Point, ProductKind, Space};

fn main() -> digitop::Result<()> {
    let i = Space::interval(0, 2)?.into_arc();
    let two = Space::interval(0, 1)?.into_arc();
    let fold = DigitalMap::from_fn(i.clone(), two.clone(), |p| Point::from([p.coords()[0].min(1)]))?;
    println!("[0,2] -> [0,1] folding the top: shy {}", is_shy(&fold));
    println!("  {:?}", shy_equivalences(&fold)?);

    // Two shy maps whose tensor product is not even continuous.
    let point = Space::line(&[0])?.into_arc();
    let zero = DigitalMap::constant(two.clone(), point.clone(), &Point::from([0]))?;
    let id = DigitalMap::identity(two.clone());
    let t = DigitalMap::product(&[&zero, &id], ProductKind::Tensor)?;
    println!("0 and id shy: {} {}, tensor product shy {}", is_shy(&zero), is_shy(&id), is_shy(&t));

    // A lexicographic product can be shy with a factor that is not.
    let gap = Space::line(&[0, 2])?.into_arc();
    let squash = DigitalMap::constant(gap, point, &Point::from([0]))?;
    let l = DigitalMap::product(&[&zero, &squash], ProductKind::Lex)?;
    println!("{{0,2}} -> {{0}} shy {}, lex product shy {}", is_shy(&squash), is_shy(&l));
    Ok(())
}
