//! Structure of the graded quotients of the twisted and framed Whitney
//! tower filtrations, and a checklist of the algebraic statements behind
//! them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{cokernel_structure, AbelianGroupStructure, IntMatrix};
use crate::freelie::{
    bsl_kernel_dimension, dn_basis, levine_quotient, lyndon_words, milnor_rank, witt_rank, DnFrame,
};
use crate::limits::Limits;
use crate::treecalc::eta_image_generators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Twisted,
    Framed,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Twisted => "twisted",
            Flavor::Framed => "framed",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "twisted" => Ok(Flavor::Twisted),
            "framed" => Ok(Flavor::Framed),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotientReport {
    pub m: usize,
    pub n: usize,
    pub flavor: Flavor,
    pub structure: AbelianGroupStructure,
    pub invariant_basis_description: String,
    /// F_2-dimension of the part invisible to rational towers, nonzero only
    /// for twisted towers of order `4k - 2`.
    pub annihilated_arf_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub m: usize,
    pub n: usize,
    pub flavor: Flavor,
    pub structure: String,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub invariant_basis_description: String,
    pub annihilated_arf_dimension: usize,
}

impl GradedQuotientReport {
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            m: self.m,
            n: self.n,
            flavor: self.flavor,
            structure: self.structure.to_string(),
            free_rank: self.structure.free_rank,
            torsion: self.structure.torsion.iter().map(|d| d.to_string()).collect(),
            invariant_basis_description: self.invariant_basis_description.clone(),
            annihilated_arf_dimension: self.annihilated_arf_dimension,
        }
    }
}

fn arf_dimension(m: usize, n: usize) -> Result<usize> {
    if n % 4 == 2 {
        Ok(witt_rank(m, (n + 2) / 4)? as usize)
    } else {
        Ok(0)
    }
}

fn checked_milnor_rank(m: usize, n: usize) -> Result<usize> {
    Limits::from_env().check(m, n)?;
    let formula = milnor_rank(m, n) as usize;
    let computed = dn_basis(m, n).len();
    if formula != computed {
        return Err(Error::QuotientMismatch(format!(
            "D_{n} has rank {computed} for m={m}, expected {formula}"
        )));
    }
    Ok(formula)
}

/// The twisted quotient: free of rank `M(m, n)`, detected by `μ_n` in `D_n`.
pub fn twisted_quotient(m: usize, n: usize) -> Result<GradedQuotientReport> {
    let rank = checked_milnor_rank(m, n)?;
    let arf = arf_dimension(m, n)?;
    let mut description = format!("μ_{n} in D_{n}, coordinates in a saturated basis of rank {rank}");
    if arf > 0 {
        description.push_str(&format!(
            "; the kernel of μ_{n} on order {n} twisted trees is Z_2 ⊗ L_{} of dimension {arf}, killed rationally",
            (n + 2) / 4
        ));
    }
    Ok(GradedQuotientReport {
        m,
        n,
        flavor: Flavor::Twisted,
        structure: AbelianGroupStructure::free(rank),
        invariant_basis_description: description,
        annihilated_arf_dimension: arf,
    })
}

/// The framed quotient: `Z^{M(m,n)}` for even `n`, and for `n = 2l - 1` an
/// extra `(Z_2)^{R(m,l+1)}` detected by `SL_{2l-1}`. The `Z_2` rank is
/// checked against the Levine quotient of `D_{2l}`.
pub fn framed_quotient(m: usize, n: usize) -> Result<GradedQuotientReport> {
    let rank = checked_milnor_rank(m, n)?;
    if n.is_multiple_of(2) {
        return Ok(GradedQuotientReport {
            m,
            n,
            flavor: Flavor::Framed,
            structure: AbelianGroupStructure::free(rank),
            invariant_basis_description: format!("μ_{n} in D_{n}, rank {rank}"),
            annihilated_arf_dimension: 0,
        });
    }
    let ell = n.div_ceil(2);
    Limits::from_env().check(m, 2 * ell)?;
    let twos = witt_rank(m, ell + 1)? as usize;
    let levine = levine_quotient(m, ell)?.dimension();
    if levine != twos {
        return Err(Error::QuotientMismatch(format!(
            "Levine quotient of D_{} has dimension {levine}, expected {twos}",
            2 * ell
        )));
    }
    Ok(GradedQuotientReport {
        m,
        n,
        flavor: Flavor::Framed,
        structure: AbelianGroupStructure::free_plus_twos(rank, twos),
        invariant_basis_description: format!(
            "μ_{n} in D_{n} (rank {rank}) and SL_{n} = sl_{}(μ_{}) in Z_2 ⊗ L_{} (dimension {twos})",
            2 * ell,
            2 * ell,
            ell + 1
        ),
        annihilated_arf_dimension: 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub m: usize,
    pub n: usize,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub entries: Vec<CheckEntry>,
}

impl Checklist {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn find(&self, m: usize, n: usize, check: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.m == m && e.n == n && e.check == check)
    }

    fn record(&mut self, m: usize, n: usize, check: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.entries.push(CheckEntry {
            m,
            n,
            check: check.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for Checklist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{} m={} n={} {:<18} {}",
                if e.passed { "PASS" } else { "FAIL" },
                e.m,
                e.n,
                e.check,
                e.detail
            )?;
        }
        Ok(())
    }
}

/// Structure of `D_n` modulo `eta` of all order `n` trees (and twisted
/// trees for even `n`).
pub fn eta_cokernel(m: usize, n: usize) -> Result<AbelianGroupStructure> {
    let frame = DnFrame::new(m, n);
    let mut coords = Vec::new();
    for img in eta_image_generators(m, n)? {
        coords.push(frame.coordinates(&img).ok_or(Error::NotInKernel)?);
    }
    Ok(cokernel_structure(&IntMatrix::from_columns(frame.dimension(), &coords)))
}

fn check_witt(m: usize, n: usize) -> Result<(bool, String)> {
    let d = n + 1;
    let formula = witt_rank(m, d)?;
    let counted = lyndon_words(m, d).len() as u64;
    Ok((formula == counted, format!("R({m},{d}) = {formula}, Lyndon words {counted}")))
}

fn check_dn_rank(m: usize, n: usize) -> Result<(bool, String)> {
    let basis = dn_basis(m, n);
    let expected = milnor_rank(m, n) as usize;
    let killed = basis.iter().all(|x| x.in_dn());
    Ok((
        basis.len() == expected && killed,
        format!("rank {} (expected {expected}), bracket map kills basis: {killed}", basis.len()),
    ))
}

fn check_eta(m: usize, n: usize) -> Result<(bool, String)> {
    let structure = eta_cokernel(m, n)?;
    Ok((structure.is_trivial(), format!("D_{n} / eta images = {structure}")))
}

fn check_levine(m: usize, k: usize) -> Result<(bool, String)> {
    let q = levine_quotient(m, k)?;
    let expected = witt_rank(m, k + 1)? as usize;
    Ok((
        q.dimension() == expected,
        format!("D_{} / plain eta images = {}", 2 * k, q.structure),
    ))
}

fn expected_bsl(m: usize, ell: usize) -> Result<usize> {
    if ell % 2 == 1 {
        Ok(witt_rank(m, ell.div_ceil(2))? as usize)
    } else {
        Ok(0)
    }
}

fn check_bsl(m: usize, ell: usize) -> Result<(bool, String)> {
    let got = bsl_kernel_dimension(m, ell)?;
    let expected = expected_bsl(m, ell)?;
    Ok((got == expected, format!("dimension {got}, expected {expected}")))
}

fn check_twisted(m: usize, n: usize) -> Result<(bool, String)> {
    let r = twisted_quotient(m, n)?;
    let expected = AbelianGroupStructure::free(milnor_rank(m, n) as usize);
    Ok((
        r.structure == expected,
        format!("{} (arf dimension {})", r.structure, r.annihilated_arf_dimension),
    ))
}

fn check_arf(m: usize, n: usize) -> Result<(bool, String)> {
    let r = twisted_quotient(m, n)?;
    let ell = n / 2;
    let bsl = bsl_kernel_dimension(m, ell)?;
    Ok((
        r.annihilated_arf_dimension == bsl,
        format!("arf dimension {}, B^SL kernel at {ell}: {bsl}", r.annihilated_arf_dimension),
    ))
}

fn check_framed(m: usize, n: usize) -> Result<(bool, String)> {
    let r = framed_quotient(m, n)?;
    let rank = milnor_rank(m, n) as usize;
    let expected = if n.is_multiple_of(2) {
        AbelianGroupStructure::free(rank)
    } else {
        AbelianGroupStructure::free_plus_twos(rank, witt_rank(m, n.div_ceil(2) + 1)? as usize)
    };
    Ok((r.structure == expected, r.structure.to_string()))
}

/// Runs every structural check for `1 <= m <= m_max`, `0 <= n <= n_max`.
pub fn verify_theorems(m_max: usize, n_max: usize) -> Checklist {
    let mut out = Checklist::default();
    for m in 1..=m_max {
        for n in 0..=n_max {
            out.record(m, n, "witt_rank", check_witt(m, n));
            out.record(m, n, "dn_rank", check_dn_rank(m, n));
            out.record(m, n, "eta_surjective", check_eta(m, n));
            if n % 2 == 0 {
                out.record(m, n, "levine_quotient", check_levine(m, n / 2));
            }
            if (1..=3).contains(&n) {
                out.record(m, n, "bsl_dichotomy", check_bsl(m, n));
            }
            out.record(m, n, "twisted_structure", check_twisted(m, n));
            if n % 4 == 2 {
                out.record(m, n, "arf_equals_bsl", check_arf(m, n));
            }
            out.record(m, n, "framed_structure", check_framed(m, n));
        }
    }
    out
}
