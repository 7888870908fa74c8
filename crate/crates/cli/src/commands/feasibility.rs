use num_rational::Rational64;
use oos_core::variance_tools::{moment_feasibility, MomentTarget};
use serde_json::json;

use crate::args::{FeasibilityArgs, Format};
use crate::error::CliError;
use crate::expr;
use crate::output::{self, Output};

fn coefficient(flag: &str, src: &str, n: Option<i64>) -> Result<Rational64, CliError> {
    expr::eval(src, n).map_err(|e| CliError::Usage(format!("{flag} `{src}`: {}", e.0)))
}

pub fn run(args: &FeasibilityArgs, out: &Output) -> Result<String, CliError> {
    if let Some(n) = args.n {
        if n < 2 {
            return Err(CliError::Domain(format!("--n must be at least 2, got {n}")));
        }
    }
    let target = MomentTarget::new(
        coefficient("--t-sigma", &args.t_sigma, args.n)?,
        coefficient("--t-c", &args.t_c, args.n)?,
        coefficient("--t-mu", &args.t_mu, args.n)?,
    );
    let result = moment_feasibility(&target);
    let verdict = match &result.coefficients {
        None => "infeasible".to_owned(),
        Some((a, b)) => {
            let s2 = *a == Rational64::from(1) && *b == Rational64::from(-1);
            format!("feasible, a={a}, b={b}{}", if s2 { " (s²)" } else { "" })
        }
    };
    let target_text = format!("{} σ² + {} C + {} μ²", target.t_sigma, target.t_c, target.t_mu);
    match out.format {
        Format::Text => Ok(format!("{verdict}\ntarget: {target_text}\n")),
        Format::Csv => Ok(format!(
            "t_sigma,t_c,t_mu,feasible,a,b\n{},{},{},{},{},{}\n",
            target.t_sigma,
            target.t_c,
            target.t_mu,
            result.feasible,
            result.coefficients.as_ref().map(|c| c.0.to_string()).unwrap_or_default(),
            result.coefficients.as_ref().map(|c| c.1.to_string()).unwrap_or_default(),
        )),
        Format::Json => output::json(&json!({
            "t_sigma": target.t_sigma.to_string(),
            "t_c": target.t_c.to_string(),
            "t_mu": target.t_mu.to_string(),
            "feasible": result.feasible,
            "a": result.coefficients.as_ref().map(|c| c.0.to_string()),
            "b": result.coefficients.as_ref().map(|c| c.1.to_string()),
        })),
    }
}
