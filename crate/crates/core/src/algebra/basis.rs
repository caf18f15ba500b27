//! Enumeration of the finite symbol basis below a homogeneity threshold.

use super::kappa::KappaValue;
use super::multi_index::MultiIndex;
use super::scalar::{ratio, Rational};
use super::symbol::{SectorAtom, Symbol};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("kappa must satisfy 0 < κ < 1/2, got {0}")]
    KappaOutOfRange(Rational),
}

/// All symbols of `T` with homogeneity strictly below `zeta`, deduplicated and
/// sorted by `(homogeneity, canonical text)`.
///
/// Membership uses the global κ-small order; finiteness needs `κ < 1/2`, which
/// is enforced on the supplied κ.
pub fn enumerate_basis(zeta: &KappaValue, kappa: &Rational) -> Result<Vec<Symbol>, BasisError> {
    if kappa <= &Rational::zero() || kappa >= &ratio(1, 2) {
        return Err(BasisError::KappaOutOfRange(kappa.clone()));
    }
    let mut out = Vec::new();
    for atom in SectorAtom::ALL {
        let base = atom.homogeneity();
        // homogeneity = base + m(1/2 - κ) + deg(k); its constant part grows by
        // 1/2 per I(Ξ)-power and by 1 per polynomial degree, so both scans
        // terminate as soon as the constant part passes the threshold
        let mut m = 0u32;
        loop {
            let with_m = &base + &KappaValue::from_parts(1, 2, -1, 1).scale(m as i64);
            if with_m.const_part() > zeta.const_part() {
                break;
            }
            // deg(k) ≤ const(ζ) − const(with_m); one extra unit of slack keeps
            // the κ-coefficient tie-break honest
            let budget = zeta.const_part() - with_m.const_part();
            use num::ToPrimitive;
            let max_deg = budget.to_f64().unwrap().floor() as u32;
            for k1 in 0..=max_deg / 2 {
                for k2 in 0..=max_deg {
                    let k = MultiIndex::new(k1, k2);
                    let hom = &with_m + &KappaValue::from_int(k.parabolic_degree() as i64);
                    if &hom < zeta {
                        let sym = atom
                            .symbol()
                            .mul(&Symbol::i_xi().pow(m))
                            .mul(&Symbol::x_pow(k));
                        out.push(sym);
                    }
                }
            }
            m += 1;
        }
    }
    out.sort_by(|a, b| {
        (a.homogeneity(), a.to_string()).cmp(&(b.homogeneity(), b.to_string()))
    });
    out.dedup();
    Ok(out)
}
