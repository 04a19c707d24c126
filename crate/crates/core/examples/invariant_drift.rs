//! RK4 drift of a quadratic invariant under step refinement, with and without
//! projection onto the level set. Pass `--csv` to print a trajectory instead.

use crnkit::poly::PolynomialSystem;
use crnkit::rational::int;
use crnkit::sim::{drift_report, integrate, Projection, SimConfig};
use crnkit::QuadraticCandidate;

fn main() -> anyhow::Result<()> {
    let planar = PolynomialSystem::parse(&["x", "y"], &["2*y^2 - 3*x*y", "3*x^2 - 2*x*y"])?;
    let spatial = PolynomialSystem::parse(
        &["x", "y", "z"],
        &["2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z", "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"],
    )?;
    let r = 0.5f64.sqrt();
    let cases = [
        ("planar", &planar, vec![1.0, 0.0], QuadraticCandidate::diagonal(&[int(1), int(1)])),
        ("spatial", &spatial, vec![r, r, 0.0], QuadraticCandidate::diagonal(&[int(1), int(1), int(1)])),
    ];
    if std::env::args().any(|a| a == "--csv") {
        let cfg = SimConfig::rk4(1e-2, 10.0).with_stride(10);
        let traj = integrate(&planar, &cases[0].2, &cfg, Some(&cases[0].3))?;
        print!("{}", traj.to_csv_string());
        return Ok(());
    }
    for (label, sys, x0, v) in &cases {
        println!("{label}: V = {}", v.render(sys.names()));
        let mut prev: Option<f64> = None;
        for dt in [0.1, 0.05, 0.025, 0.0125, 1e-3] {
            let traj = integrate(sys, x0, &SimConfig::rk4(dt, 10.0), Some(v))?;
            let d = drift_report(&traj)?.max_abs_drift;
            let ratio = prev.map(|p| format!("  ratio {:.1}", p / d)).unwrap_or_default();
            println!("  dt = {dt:<7} max |V - V0| = {d:.3e}{ratio}");
            prev = Some(d);
        }
        let cfg = SimConfig::rk4(0.1, 10.0).with_projection(Projection::LevelSet);
        let d = drift_report(&integrate(sys, x0, &cfg, Some(v))?)?.max_abs_drift;
        println!("  dt = 0.1 with projection: {d:.3e}");
    }
    Ok(())
}
