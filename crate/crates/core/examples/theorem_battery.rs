//! Runs the generic centralizer and normalizer tests against direct
//! membership on every battery fixture and ring.
use gradscheme::comrings::Tabled;
use gradscheme::fixtures;
use gradscheme::points::{self, Stage};

fn main() -> gradscheme::Result<()> {
    for (name, g) in fixtures::battery_fixtures()? {
        for r in fixtures::battery_rings(g.field())? {
            let report = match Tabled::new(&r) {
                Ok(t) => points::theorem_check(&Stage::new(&g, &t)?, 1_000_000, 100, 1)?,
                Err(_) => points::theorem_check(&Stage::new(&g, &r)?, 1_000_000, 100, 1)?,
            };
            println!(
                "{name:<10} {:<14} {:?} points={} stab={} autgamma={} ok={}",
                r.name(),
                report.coverage,
                report.points,
                report.stab_members,
                report.autgamma_members,
                report.passed()
            );
        }
    }
    Ok(())
}
