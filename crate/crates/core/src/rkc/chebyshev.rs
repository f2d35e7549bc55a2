/// Value and first two derivatives of a Chebyshev polynomial of the first kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevEval {
    pub t: f64,
    pub dt: f64,
    pub ddt: f64,
}

impl ChebyshevEval {
    const ZERO_DEGREE: Self = Self {
        t: 1.0,
        dt: 0.0,
        ddt: 0.0,
    };

    fn first_degree(x: f64) -> Self {
        Self {
            t: x,
            dt: 1.0,
            ddt: 0.0,
        }
    }

    /// Degree `j` from degrees `j - 1` and `j - 2`, differentiating
    /// `T_j = 2x T_{j-1} - T_{j-2}` term by term.
    fn next(x: f64, prev: Self, prev2: Self) -> Self {
        Self {
            t: 2.0 * x * prev.t - prev2.t,
            dt: 2.0 * prev.t + 2.0 * x * prev.dt - prev2.dt,
            ddt: 4.0 * prev.dt + 2.0 * x * prev.ddt - prev2.ddt,
        }
    }
}

/// `T_j(x)`, `T_j'(x)`, `T_j''(x)`.
pub fn chebyshev_eval(j: usize, x: f64) -> ChebyshevEval {
    chebyshev_table(j, x)[j]
}

/// Evaluations for all degrees `0..=max_degree`.
pub fn chebyshev_table(max_degree: usize, x: f64) -> Vec<ChebyshevEval> {
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(ChebyshevEval::ZERO_DEGREE);
    if max_degree >= 1 {
        out.push(ChebyshevEval::first_degree(x));
    }
    for j in 2..=max_degree {
        let next = ChebyshevEval::next(x, out[j - 1], out[j - 2]);
        out.push(next);
    }
    out
}
