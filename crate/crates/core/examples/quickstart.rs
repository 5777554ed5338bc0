use lelong_core::convex::Direction;
use lelong_core::diagram::IndicatorDiagram;
use lelong_core::estimate::{estimate_directional, WLadder};
use lelong_core::exact::{format_q, q, q_frac};
use lelong_core::poly::parse_polynomial;
use lelong_core::psh::PshModel;

fn main() -> lelong_core::Result<()> {
    let f = parse_polynomial("x1^2*x2 + x2^3", 2)?;
    let diagram = IndicatorDiagram::from_polynomial(&f);
    let a = Direction::new(vec![q(1), q_frac(1, 2)])?;
    println!("index = {}", format_q(&diagram.index(&a)));

    let model = PshModel::log_abs(f);
    let report = estimate_directional(&model, &a, &WLadder::decades(2, 6))?;
    println!("estimate = {:.6} +/- {:.1e}", report.estimate, report.error_bound);
    Ok(())
}
