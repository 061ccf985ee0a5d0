//! Parsing adjacency expressions and comparing them on a window.

use digitop::{dominates, domination_witness, Adjacency, DigitalImage, Point};

fn main() -> digitop::Result<()> {
    let lex = Adjacency::parse("L(c1,c1)", 2)?;
    let cart = Adjacency::parse("X(c1,c1)", 2)?;
    let (p, q) = (Point::from([0, 0]), Point::from([1, 2]));
    println!("{lex}: {p} ~ {q} is {}", lex.adjacent(&p, &q)?);
    println!("{cart}: {p} ~ {q} is {}", cart.adjacent(&p, &q)?);

    // Blocks of mixed width use `c<u>@<dim>`.
    let a = Adjacency::parse("T(c2@3,c2@3)", 6)?;
    let b = Adjacency::parse("T(c1@3,c3@3)", 6)?;
    let cube = DigitalImage::window(&[0; 6], &[1; 6])?;
    println!("{a} dominates {b}: {}", dominates(&a, &b, &cube)?);
    if let Some((x, y)) = domination_witness(&a, &b, &cube)? {
        println!("  witness {x} ~ {y}");
    }

    let square = DigitalImage::window(&[0, 0], &[2, 2])?;
    for (s, w) in [("NP1(c1,c1)", "NP2(c1,c1)"), ("T(c1,c1)", "L(c1,c1)"), ("c2", "c1")] {
        let (s, w) = (Adjacency::parse(s, 2)?, Adjacency::parse(w, 2)?);
        println!("{s} dominates {w} on [0,2]^2: {}", dominates(&s, &w, &square)?);
    }
    Ok(())
}
