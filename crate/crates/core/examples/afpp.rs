//! The approximate fixed point property on squares.

use digitop::{has_afpp, AfppOutcome, DigitalImage, Space, DEFAULT_BUDGET};

fn main() -> digitop::Result<()> {
    for spec in ["c1", "c2", "NP1(c1,c1)", "T(c1,c1)", "X(c1,c1)", "L(c1,c1)"] {
        let x = Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1])?, spec)?.into_arc();
        match has_afpp(&x, DEFAULT_BUDGET) {
            AfppOutcome::Holds { nodes } => println!("{spec:>10}: holds ({nodes} search nodes)"),
            AfppOutcome::Fails(f) => {
                let moves: Vec<String> = f.pairs().map(|(p, q)| format!("{p}->{q}")).collect();
                println!("{spec:>10}: fails, {}", moves.join(" "));
            }
            AfppOutcome::BudgetExceeded => println!("{spec:>10}: budget exceeded"),
        }
    }
    Ok(())
}
