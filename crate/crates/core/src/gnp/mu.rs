// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use super::GnpError;

/// The dual parameter: `mu` in `(0, 1)` with `mu e^-mu = (1+eps) e^-(1+eps)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct MuSolution {
    pub eps: f64,
    pub mu: f64,
    pub residual: f64,
}

/// Bisection on `(0, 1)`, where `x e^-x` is strictly increasing.
pub fn solve_mu(eps: f64) -> Result<MuSolution, GnpError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(GnpError::NonPositiveEps(eps));
    }
    let target = (1.0 + eps) * (-(1.0 + eps)).exp();
    let f = |x: f64| x * (-x).exp() - target;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // hi may still be 1.0 when eps is below the resolution of x e^-x near 1
    let mu = if hi < 1.0 && f(hi).abs() < f(lo).abs() { hi } else { lo };
    Ok(MuSolution { eps, mu, residual: f(mu).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let s = solve_mu(1.0).unwrap();
        assert!((s.mu - 0.406375).abs() < 1e-5);
        assert!(s.residual <= 1e-12);
        let tiny = solve_mu(1e-12).unwrap();
        assert!(tiny.mu < 1.0 && (1.0 - tiny.mu) < 1e-5);
        assert!(solve_mu(0.0).is_err());
        assert!(solve_mu(-0.5).is_err());
    }

    #[test]
    fn gap_exceeds_half_eps() {
        for i in 1..=50 {
            let eps = 0.01 * f64::from(i);
            let s = solve_mu(eps).unwrap();
            assert!(s.residual <= 1e-12);
            assert!(s.mu > 0.0 && s.mu < 1.0);
            assert!(1.0 - s.mu > eps / 2.0);
        }
    }
}
