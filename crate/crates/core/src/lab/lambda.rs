use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{bisect_root, chebyshev_t};

/// The n values tabulated for 1/(nλₙ).
pub const TABLE1_NS: [usize; 7] = [4, 5, 6, 10, 20, 50, 80];

const LAMBDA_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaBound {
    pub n: usize,
    pub p: u32,
    pub lambda: f64,
    /// 1/(nλₙ), a lower bound on the inner Euclidean K*ₙ.
    pub lower_bound: f64,
}

impl LambdaBound {
    /// sin(π/(2p+4)), the right end of the bracketing interval.
    pub fn upper_limit(&self) -> f64 {
        (PI / (2.0 * self.p as f64 + 4.0)).sin()
    }

    /// |T_p(√(1−λ²)) − 2λ|.
    pub fn residual(&self) -> f64 {
        (chebyshev_t(self.p, (1.0 - self.lambda * self.lambda).sqrt()) - 2.0 * self.lambda).abs()
    }
}

/// Solves T_p(√(1−x²)) = 2x on (0, sin(π/(2p+4))) with p = ⌊n/2⌋ − 1.
pub fn solve_lambda_n(n: usize) -> Result<LambdaBound> {
    if n < 4 {
        return Err(usage(format!("lambda_n needs n >= 4, got {n}")));
    }
    let p = (n / 2 - 1) as u32;
    let hi = (PI / (2.0 * p as f64 + 4.0)).sin();
    let f = |x: f64| chebyshev_t(p, (1.0 - x * x).sqrt()) - 2.0 * x;
    let lambda = bisect_root(f, 0.0, hi, LAMBDA_TOL)?;
    let nf = n as f64;
    let bound = LambdaBound { n, p, lambda, lower_bound: 1.0 / (nf * lambda) };

    let chain = [
        bound.lower_bound,
        1.0 / (nf * hi),
        (2.0 * p as f64 + 4.0) / (nf * PI),
        1.0 / PI,
    ];
    if !(lambda > 0.0 && lambda < hi) || chain.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Precondition(format!(
            "lambda_{n} = {lambda} breaks the bound chain {chain:?}"
        )));
    }
    Ok(bound)
}

/// One row per n: (n, λₙ, 1/(nλₙ)).
pub fn lambda_bound_table(ns: &[usize]) -> Result<Vec<LambdaBound>> {
    ns.iter().map(|&n| solve_lambda_n(n)).collect()
}
