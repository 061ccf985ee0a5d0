//! Searching for retractions onto a subset.

use digitop::{exists_retraction, is_retraction, DigitalImage, Point, Search, Space, DEFAULT_BUDGET};

fn main() -> digitop::Result<()> {
    let square = Space::with_spec(DigitalImage::window(&[0, 0], &[2, 2])?, "c2")?.into_arc();
    let corners = DigitalImage::new([[0, 0], [2, 2]].map(Point::from))?;
    let edge = DigitalImage::new([[0, 0], [1, 0], [2, 0]].map(Point::from))?;

    for (name, a) in [("two corners", &corners), ("bottom edge", &edge)] {
        match exists_retraction(&square, a, DEFAULT_BUDGET)? {
            Search::Found(r) => println!("{name}: retract, verified {}", is_retraction(&r, a)?),
            Search::Exhausted => println!("{name}: not a retract"),
            Search::BudgetExceeded => println!("{name}: budget exceeded"),
        }
    }
    Ok(())
}
