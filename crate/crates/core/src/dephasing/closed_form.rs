//! Closed-form observables of the unit code's first logical qubit.

use super::{NoiseKind, ObservableRecord};

/// Evaluates the six closed-form expressions at `(θ, φ, γ, t)`.
pub fn closed_form(kind: NoiseKind, theta: f64, phi: f64, gamma: f64, t: f64) -> ObservableRecord {
    let e2 = (-2.0 * gamma * t).exp();
    let e8 = (-8.0 * gamma * t).exp();
    let (s, c) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let v = match kind {
        NoiseKind::Global => {
            let r = 0.5 * (1.0 + e2);
            let p = (3.0 + 4.0 * e2 + e8) / 32.0;
            [
                r * s * cp,
                -r * s * sp,
                c,
                p * s * cp,
                -p * s * sp,
                (1.0 + 9.0 * c - 4.0 * e2 * (1.0 - c) + 3.0 * e8 * (1.0 + c)) / 64.0,
            ]
        }
        NoiseKind::Local => {
            let p = (e2 + e8) / 8.0;
            [e2 * s * cp, -e2 * s * sp, c, p * s * cp, -p * s * sp, (1.0 + 3.0 * e8) / 16.0 * c]
        }
    };
    ObservableRecord::from_values(t, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_time_limits() {
        let (theta, phi) = (0.9, 0.4);
        let g = closed_form(NoiseKind::Global, theta, phi, 1.0, 1e3);
        assert!((g.r_x - 0.5 * theta.sin() * phi.cos()).abs() < 1e-15);
        assert!((g.p_x - 3.0 / 32.0 * theta.sin() * phi.cos()).abs() < 1e-15);
        let l = closed_form(NoiseKind::Local, theta, phi, 1.0, 1e3);
        assert_eq!((l.p_x, l.p_y), (0.0, -0.0));
        assert_eq!(l.r_z, theta.cos());
    }

    #[test]
    fn time_zero_prefactor() {
        for kind in [NoiseKind::Global, NoiseKind::Local] {
            let r = closed_form(kind, 1.2, 2.5, 0.7, 0.0);
            for (p, q) in [(r.p_x, r.r_x), (r.p_y, r.r_y), (r.p_z, r.r_z)] {
                assert!((p - q / 4.0).abs() < 1e-15, "{kind}");
            }
        }
        let l = closed_form(NoiseKind::Local, 0.4, 0.0, 2.0, 0.0);
        assert!((l.p_z - 0.4f64.cos() / 4.0).abs() < 1e-16);
    }
}
