use num_complex::Complex64;

use super::{pochhammer::ln_one_minus, qpoch_inf_ln, QBase};
use crate::error::{Error, Result};

/// `Γ_q(z) = (q;q)_∞ / (q^z;q)_∞ · (1-q)^{1-z}`, principal branches.
///
/// Evaluated in log space: at q near 1 both infinite products underflow.
pub fn q_gamma(q: QBase, z: Complex64) -> Result<Complex64> {
    let qz = (q.ln() * z).exp();
    // Poles where 1 - q^{z+j} = 0.
    let mut f = qz;
    let mut j = 0u64;
    while f.norm() > 1.0 - 1e-9 {
        if (1.0 - f).norm() < 1e-13 {
            return Err(Error::QGammaPole { index: j });
        }
        f *= q.value();
        j += 1;
    }
    let num = qpoch_inf_ln(q.value(), q, 1e-17);
    let den = qpoch_inf_ln(qz, q, 1e-17);
    let pow = (1.0 - z) * ln_one_minus(q.value());
    Ok((num - den + pow).exp())
}
