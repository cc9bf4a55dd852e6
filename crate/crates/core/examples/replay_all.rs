use bmforge_core::scenario::{run_scenario, ScenarioSpec, SCENARIO_IDS};

fn main() {
    for id in SCENARIO_IDS {
        let t = std::time::Instant::now();
        match run_scenario(&ScenarioSpec::new(id)) {
            Ok(r) => {
                println!("{id}: pass={} ({:?})", r.pass, t.elapsed());
                for a in &r.assertions {
                    println!(
                        "    {} {:e} {}",
                        if a.pass { "ok " } else { "BAD" },
                        a.residual,
                        a.name
                    );
                }
            }
            Err(e) => println!("{id}: error {e}"),
        }
    }
}
