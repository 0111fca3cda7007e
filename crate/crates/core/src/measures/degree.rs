// SPDX-License-Identifier: Apache-2.0

use crate::error::Result;
use crate::spectrum::SpectrumRep;
use crate::tt::TruthTable;

/// Degree of the unique multilinear polynomial over the reals, with its spectrum.
pub fn real_degree(f: &TruthTable) -> (usize, SpectrumRep) {
    let s = SpectrumRep::moebius(f);
    (s.degree(), s)
}

/// Degree over F_p. Fails with [`crate::Error::NotPrime`] for composite `p`.
pub fn modp_degree(f: &TruthTable, p: u64) -> Result<(usize, SpectrumRep)> {
    let s = SpectrumRep::moebius_mod_p(f, p)?;
    Ok((s.degree(), s))
}

/// Number of nonzero Fourier coefficients of `χ = 1 - 2f`.
pub fn sparsity(f: &TruthTable) -> (usize, SpectrumRep) {
    let s = SpectrumRep::walsh_hadamard(f);
    (s.support_size(), s)
}
