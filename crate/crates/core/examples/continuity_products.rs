//! Product maps and which adjacencies keep them continuous.

use std::sync::Arc;

use digitop::{DigitalMap, Point, ProductKind, Space};

fn main() -> digitop::Result<()> {
    let i = Space::interval(0, 1)?.into_arc();
    let gap = Space::line(&[0, 2])?.into_arc();
    let point = Space::line(&[0])?.into_arc();

    // [0,1] -> {0,2} breaks the edge of [0,1]. Paired with the identity of a
    // single point, the tensor product has no edges left to break.
    let spread = DigitalMap::from_fn(i.clone(), gap.clone(), |p| Point::from([2 * p.coords()[0]]))?;
    let stay = DigitalMap::identity(point.clone());
    println!("factor [0,1] -> {{0,2}} continuous: {}", spread.is_continuous());

    for kind in [ProductKind::Np(1), ProductKind::Np(2), ProductKind::Tensor, ProductKind::Cartesian, ProductKind::Lex]
    {
        let f = DigitalMap::product(&[&stay, &spread], kind)?;
        let g = DigitalMap::product(&[&spread, &stay], kind)?;
        println!("{kind:>4}: id x f continuous {:5}  f x id continuous {:5}", f.is_continuous(), g.is_continuous());
        if let Some((p, q)) = g.discontinuity() {
            println!("      broken edge {p} ~ {q}");
        }
    }

    let square: Arc<Space> = Space::product(&[&i, &i], ProductKind::Np(2))?.into_arc();
    let swap = DigitalMap::from_fn(square.clone(), square, |p| Point::from([p.coords()[1], p.coords()[0]]))?;
    println!("coordinate swap is an isomorphism: {}", swap.is_isomorphism());
    Ok(())
}
