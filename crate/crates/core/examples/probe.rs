fn main() {
    let t0 = std::time::Instant::now();
    let mut all_pass = true;
    for suite in rmsbound::verify::run_suite("all", 20260809).unwrap() {
        for c in &suite.checks {
            if !c.pass {
                all_pass = false;
            }
            println!(
                "[{}] {} : residual {:.3e} tol {:.1e} -> {}",
                suite.suite,
                c.check,
                c.residual,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    println!("total {:.1}s all_pass={all_pass}", t0.elapsed().as_secs_f64());
}
