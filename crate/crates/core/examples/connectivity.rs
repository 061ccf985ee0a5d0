//! Components of product images.

use digitop::{ProductKind, Space};

fn main() -> digitop::Result<()> {
    let i = Space::interval(0, 1)?;
    let square = Space::product(&[&i, &i], ProductKind::Tensor)?;
    for (k, c) in square.component_points().iter().enumerate() {
        println!("tensor square, component {k}: {c:?}");
    }

    // A six-point simple closed curve times an interval.
    let curve = Space::with_spec(
        digitop::DigitalImage::new([[0, 0], [1, -1], [1, 1], [2, -1], [2, 1], [3, 0]].map(digitop::Point::from))?,
        "c2",
    )?;
    for kind in [ProductKind::Cartesian, ProductKind::Np(1), ProductKind::Tensor] {
        let x = Space::product(&[&curve, &i], kind)?;
        let sizes: Vec<usize> = x.components().iter().map(Vec::len).collect();
        println!("{kind}: {} points, components {sizes:?}", x.len());
    }

    let (a, b) = (Space::line(&[0, 1])?, Space::line(&[0, 2])?);
    let ab = Space::product(&[&a, &b], ProductKind::Lex)?;
    let ba = Space::product(&[&b, &a], ProductKind::Lex)?;
    println!("{{0,1}} x {{0,2}} lex connected: {}", ab.is_connected());
    println!("{{0,2}} x {{0,1}} lex connected: {}", ba.is_connected());
    Ok(())
}
