//! Stab -> Aut(Gamma) -> W at points over several finite fields.
use gradscheme::fixtures;
use gradscheme::points::DEFAULT_CAP;
use gradscheme::scalars::Field;
use gradscheme::weyl;

fn main() -> gradscheme::Result<()> {
    for q in [2, 4, 7, 13] {
        let g = fixtures::cubic(&Field::finite(q)?)?;
        let s = weyl::ses_check(&g, DEFAULT_CAP)?;
        println!(
            "{}: |Aut(Gamma)| = {}, |Stab| = {}, |W| = {}, |W closure| = {}, exact {}",
            s.field,
            s.aut_gamma,
            s.stab,
            s.weyl.order(),
            s.closure.order(),
            s.passed()
        );
    }
    Ok(())
}
