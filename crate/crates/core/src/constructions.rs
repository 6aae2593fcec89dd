//! Explicit zero forcing and power dominating sets for the classic
//! families, the closed-form optimal values, and the word-counting helper
//! behind the Kautz power-domination set size.
//!
//! Membership rules are stated on words `(a_1, …, a_n)`; all arithmetic is
//! modular over the vertex alphabet (`Z_d` for de Bruijn, `Z_{d+1}` for
//! Kautz).

use crate::digraph::VertexSet;
use crate::error::{Error, Result};
use crate::propagation::Quantity;
use crate::topologies::{Family, FamilySpec, WordVertex};

fn collect_words(
    family: Family,
    d: usize,
    n: usize,
    mut keep: impl FnMut(&[usize]) -> bool,
) -> Result<VertexSet> {
    let spec = FamilySpec::new(family, d, n)?;
    let count = spec.vertex_count()?;
    let mut out = VertexSet::new(count);
    for i in 0..count {
        let w = WordVertex::from_index(&spec, i)?;
        if keep(w.symbols()) {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Zero forcing set for the de Bruijn family: all words with `a_1 ≠ a_n`.
/// Cardinality `(d-1)·d^{n-1}`.
pub fn debruijn_zf_set(d: usize, n: usize) -> Result<VertexSet> {
    collect_words(Family::DeBruijn, d, n, |a| a[0] != a[n - 1])
}

/// Power dominating set for the de Bruijn family, cardinality
/// `(d-1)·d^{n-2}`:
///
/// * `n = 2`: the words `(0, 1), …, (0, d-1)`;
/// * `n = 3`: words with `a_2 = a_1` and `a_3 ≠ a_1`;
/// * `n ≥ 4`: words with `a_{n-1} = a_1 + a_{n-2}` and
///   `a_n ≠ a_1 + a_2 + a_{n-2}` (mod `d`).
pub fn debruijn_pd_set(d: usize, n: usize) -> Result<VertexSet> {
    collect_words(Family::DeBruijn, d, n, |a| match n {
        2 => a[0] == 0 && a[1] != 0,
        3 => a[1] == a[0] && a[2] != a[0],
        _ => {
            a[n - 2] == (a[0] + a[n - 3]) % d && a[n - 1] != (a[0] + a[1] + a[n - 3]) % d
        }
    })
}

/// Zero forcing set for the Kautz family, cardinality `(d-1)(d+1)·d^{n-2}`:
/// for `n = 2` the words with `a_2 ≠ a_1 + 1` (mod `d+1`), for `n ≥ 3` the
/// words with `a_n ≠ a_{n-2}`.
pub fn kautz_zf_set(d: usize, n: usize) -> Result<VertexSet> {
    let m = d + 1;
    collect_words(Family::Kautz, d, n, |a| match n {
        2 => a[1] != (a[0] + 1) % m,
        _ => a[n - 1] != a[n - 3],
    })
}

/// Power dominating set for the Kautz family, cardinality `d` for `n = 2`
/// and `(d-1)(d+1)·d^{n-3}` for `n ≥ 3`:
///
/// * `n = 2`: the words `(0, 1), …, (0, d)`;
/// * `n = 3`: words with `a_2 = a_1 + 1` and `a_3 ≠ a_1 + 2`;
/// * `n = 4`: words with `a_3 = a_1` and `a_4 ≠ a_2`;
/// * `n ≥ 5`: words with `(a_{n-2}, a_{n-1}) = (a_1, a_2)` and `a_n ≠ a_3`,
///   or `a_{n-1} = a_1` and `a_n ≠ a_2` (mod `d+1`).
pub fn kautz_pd_set(d: usize, n: usize) -> Result<VertexSet> {
    let m = d + 1;
    collect_words(Family::Kautz, d, n, |a| match n {
        2 => a[0] == 0,
        3 => a[1] == (a[0] + 1) % m && a[2] != (a[0] + 2) % m,
        4 => a[2] == a[0] && a[3] != a[1],
        _ => {
            (a[n - 3] == a[0] && a[n - 2] == a[1] && a[n - 1] != a[2])
                || (a[n - 2] == a[0] && a[n - 1] != a[1])
        }
    })
}

/// Number of length-`k` words over `Z_{d+1}` with no equal adjacent symbols
/// whose last symbol equals the first — equivalently, closed walks of
/// length `k-1` in the complete digraph on `d+1` vertices.
///
/// Computed by the closed form `d^{k-1} - (-1)^k · d`; satisfies the
/// recurrence `s_k = (d+1)·d^{k-2} - s_{k-1}` with `s_2 = 0`.
pub fn closed_word_count(d: usize, k: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let d = d as u64;
    let power = d
        .checked_pow((k - 1) as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("d^{} overflows", k - 1)))?;
    Ok(if k % 2 == 0 { power - d } else { power + d })
}

/// The closed-form value of a classic-family graph parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremValue {
    pub family: Family,
    pub d: usize,
    pub n: usize,
    pub quantity: Quantity,
    pub value: u64,
}

/// The known exact value of the zero forcing number or power domination
/// number of a classic family instance.
///
/// Returns `Ok(None)` where no closed form is asserted: the Kautz power
/// domination number for `n = 2` (the `n ≥ 3` formula does not extend to
/// it). Parameters below the family minimums are hard errors.
pub fn theorem_value(
    family: Family,
    d: usize,
    n: usize,
    quantity: Quantity,
) -> Result<Option<TheoremValue>> {
    if !family.is_classic() {
        return Err(Error::NotClassicFamily(family.as_str()));
    }
    FamilySpec::new(family, d, n)?;
    let overflow = || Error::InvalidParameter(format!("closed form for d={d}, n={n} overflows"));
    let pow = |e: usize| -> Result<u64> {
        (d as u64).checked_pow(e as u32).ok_or_else(overflow)
    };
    let du = d as u64;
    let value = match (family, quantity) {
        (Family::DeBruijn, Quantity::ZeroForcing) => (du - 1).checked_mul(pow(n - 1)?),
        (Family::DeBruijn, Quantity::PowerDomination) => (du - 1).checked_mul(pow(n - 2)?),
        (Family::Kautz, Quantity::ZeroForcing) => {
            (du - 1).checked_mul(du + 1).and_then(|v| v.checked_mul(pow(n - 2).ok()?))
        }
        (Family::Kautz, Quantity::PowerDomination) => {
            if n < 3 {
                return Ok(None);
            }
            (du - 1).checked_mul(du + 1).and_then(|v| v.checked_mul(pow(n - 3).ok()?))
        }
        _ => unreachable!("classic checked above"),
    }
    .ok_or_else(overflow)?;
    Ok(Some(TheoremValue {
        family,
        d,
        n,
        quantity,
        value,
    }))
}
