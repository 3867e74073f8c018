//! The expression front end: parse, evaluate, print, and run a suite.

use sl2star::frontend::{parse, run_checks, Config, Evaluator, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = Config::from_kv("order = 6\na = 4, -1/3\n")?;
    let ev = Evaluator::new(config.clone());

    for text in ["x2*x1", "e+*e-", "x3*x2 - x2*x3", "(x1 + eps*x2)^2", "xi3*E+", "h*xi2*xi1"] {
        let expr = parse(text)?;
        println!("{text:<16} parsed as {expr} = {}", ev.eval(&expr)?);
    }
    println!("[x1, e+*x2] = {}", ev.commutator("x1", "e+*x2")?);
    println!("D(x3*e-)    = {}", ev.coproduct("x3*e-")?);

    match parse("x1 * (x2 +") {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }

    let report = run_checks(Suite::Gauge, &config)?;
    print!("{}", report.to_text());
    Ok(())
}
