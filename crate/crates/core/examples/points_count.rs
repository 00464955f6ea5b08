//! Counts of Aut(A), Stab, Diag and Aut(Gamma) points over small rings.
use gradscheme::comrings::{Tabled, TestRing};
use gradscheme::fixtures;
use gradscheme::points::{self, Functor, Stage};
use gradscheme::scalars::Field;

fn main() -> gradscheme::Result<()> {
    let f3 = Field::prime(3)?;
    let g = fixtures::cyc3(&f3)?;
    for r in [TestRing::base_field(&f3), TestRing::dual_numbers(&f3, 2)?] {
        let t = Tabled::new(&r)?;
        let stage = Stage::new(&g, &t)?;
        let counts: Vec<String> = [
            Functor::AutA,
            Functor::Stab,
            Functor::Diag,
            Functor::AutGamma,
        ]
        .into_iter()
        .map(|f| {
            let n = points::enumerate_points(&stage, f, points::DEFAULT_CAP).map(|p| p.len());
            format!("{}={}", f.name(), n.map_or("?".into(), |n| n.to_string()))
        })
        .collect();
        println!("{}: {}", r.name(), counts.join(" "));
    }
    Ok(())
}
