//! Batch verification: enumerate (q, k, theorem) cases, compute the brute
//! and predicted sides independently, and emit deterministic reports.
//!
//! Records sort by (q, k, theorem tag order); a scan's output is therefore
//! byte-identical for any worker count. Known corollary discrepancies
//! (the T-half value and symbol branches) are annotated and counted as
//! expected rather than failing, unless strict mode promotes them.

use crate::builders::{build_circulant_b, build_dk, build_tk};
use crate::classnum::{class_number_result, h_by_reduced_forms};
use crate::closed::{
    det_dhalf_closed, det_dk_closed, det_thalf_closed, det_tk_closed, s_k, symbol_dhalf,
    tk_singularity_criterion, ClosedFormResult,
};
use crate::comb::{legendre_symbol, mod_inverse, mod_pow};
use crate::error::{Error, Result};
use crate::field::{is_odd_prime, odd_prime_powers, FieldElement, FieldSpec, FIELD_BOUND};
use crate::gallery;
use crate::matrix::SquareMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Every verifiable claim the harness knows. Declaration order is the
/// tie-break order within one (q, k) group of a sorted report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    DkValue,
    DkSymbolOddK,
    DhalfValue,
    DhalfSymbol,
    TkValue,
    TkSingularity,
    ThalfValue,
    ThalfSymbol,
    CirculantBridge,
    GallerySunRecip,
    GalleryInvSquares,
    GallerySdp,
    GalleryWsn,
    GalleryWuWang,
    GalleryLuoSun,
    Classnum,
}

impl Theorem {
    pub const ALL: [Theorem; 16] = [
        Theorem::DkValue,
        Theorem::DkSymbolOddK,
        Theorem::DhalfValue,
        Theorem::DhalfSymbol,
        Theorem::TkValue,
        Theorem::TkSingularity,
        Theorem::ThalfValue,
        Theorem::ThalfSymbol,
        Theorem::CirculantBridge,
        Theorem::GallerySunRecip,
        Theorem::GalleryInvSquares,
        Theorem::GallerySdp,
        Theorem::GalleryWsn,
        Theorem::GalleryWuWang,
        Theorem::GalleryLuoSun,
        Theorem::Classnum,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::DkValue => "DK_VALUE",
            Theorem::DkSymbolOddK => "DK_SYMBOL_ODDK",
            Theorem::DhalfValue => "DHALF_VALUE",
            Theorem::DhalfSymbol => "DHALF_SYMBOL",
            Theorem::TkValue => "TK_VALUE",
            Theorem::TkSingularity => "TK_SINGULARITY",
            Theorem::ThalfValue => "THALF_VALUE",
            Theorem::ThalfSymbol => "THALF_SYMBOL",
            Theorem::CirculantBridge => "CIRCULANT_BRIDGE",
            Theorem::GallerySunRecip => "GALLERY_SUN_RECIP",
            Theorem::GalleryInvSquares => "GALLERY_INV_SQUARES",
            Theorem::GallerySdp => "GALLERY_SDP",
            Theorem::GalleryWsn => "GALLERY_WSN",
            Theorem::GalleryWuWang => "GALLERY_WU_WANG",
            Theorem::GalleryLuoSun => "GALLERY_LUO_SUN",
            Theorem::Classnum => "CLASSNUM",
        }
    }

    /// The set a scan enumerates when no filter is given. GALLERY_LUO_SUN is
    /// exploratory (no predicted value exists), so it is reachable only
    /// explicitly.
    pub fn scan_default() -> Vec<Theorem> {
        Theorem::ALL
            .into_iter()
            .filter(|t| *t != Theorem::GalleryLuoSun)
            .collect()
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        let up = s.trim().to_ascii_uppercase();
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == up)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Theorem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Theorem, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// How a record counts toward the exit code. Not serialized; reports carry
/// the match flags and notes instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Status {
    Pass,
    Fail,
    /// A mismatch the harness documents deliberately; fails only in strict
    /// mode.
    ExpectedMismatch,
    #[default]
    Skip,
}

/// One verified case. Value fields are decimal strings: residues print in
/// [0, p), exact integers (S(d,p)) print signed, indicator claims print 0/1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub k: Option<u64>,
    pub theorem: Theorem,
    pub brute_value: Option<String>,
    pub closed_value: Option<String>,
    pub brute_symbol: Option<i8>,
    pub closed_symbol: Option<i8>,
    pub match_value: Option<bool>,
    pub match_symbol: Option<bool>,
    pub note: String,
    #[serde(skip)]
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub q_max: u64,
    /// None scans the default set (everything except GALLERY_LUO_SUN).
    pub theorems: Option<Vec<Theorem>>,
    /// Restrict to cases whose k column (d for GALLERY_SDP) equals this.
    pub k: Option<u64>,
    pub jobs: usize,
    pub strict: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TheoremCounts {
    pub pass: usize,
    pub fail: usize,
    pub expected_mismatch: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub expected_mismatch: usize,
    pub skip: usize,
    pub by_theorem: BTreeMap<String, TheoremCounts>,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
}

fn base(field: &FieldSpec, k: Option<u64>, theorem: Theorem) -> VerificationRecord {
    VerificationRecord {
        q: field.q(),
        p: field.p(),
        n: field.n(),
        k,
        theorem,
        brute_value: None,
        closed_value: None,
        brute_symbol: None,
        closed_symbol: None,
        match_value: None,
        match_symbol: None,
        note: String::new(),
        status: Status::Skip,
    }
}

fn skip(field: &FieldSpec, k: Option<u64>, theorem: Theorem, note: &str) -> VerificationRecord {
    let mut rec = base(field, k, theorem);
    rec.note = note.to_string();
    rec
}

fn components_note(c: &ClosedFormResult) -> String {
    c.components
        .iter()
        .map(|(name, v)| format!("{name}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// k checked to divide q - 1 with 1 < k; odd additionally when required.
fn admissible_k(
    field: &FieldSpec,
    k: Option<u64>,
    theorem: Theorem,
    need_odd: bool,
) -> std::result::Result<u64, VerificationRecord> {
    let q = field.q();
    let Some(kv) = k else {
        return Err(skip(field, None, theorem, "not applicable: k parameter required"));
    };
    if kv < 2 || (q - 1) % kv != 0 {
        return Err(skip(
            field,
            Some(kv),
            theorem,
            "not applicable: k must divide q - 1 and exceed 1",
        ));
    }
    if need_odd && kv % 2 == 0 {
        return Err(skip(field, Some(kv), theorem, "not applicable: k must be odd"));
    }
    Ok(kv)
}

/// The half-corollaries pin k = (q-1)/2; a missing k means exactly that.
fn half_k(
    field: &FieldSpec,
    k: Option<u64>,
    theorem: Theorem,
) -> std::result::Result<u64, VerificationRecord> {
    let q = field.q();
    if q < 5 {
        return Err(skip(field, k, theorem, "not applicable: q must be at least 5"));
    }
    let half = (q - 1) / 2;
    match k {
        None => Ok(half),
        Some(kv) if kv == half => Ok(half),
        Some(kv) => Err(skip(
            field,
            Some(kv),
            theorem,
            "not applicable: k must equal (q-1)/2",
        )),
    }
}

fn prime_only(
    field: &FieldSpec,
    k: Option<u64>,
    theorem: Theorem,
) -> std::result::Result<u64, VerificationRecord> {
    if field.n() != 1 {
        return Err(skip(field, k, theorem, "not applicable: stated for prime fields"));
    }
    Ok(field.p())
}

fn fmt_el(field: &FieldSpec, el: FieldElement) -> String {
    field.format_element(el)
}

/// Legendre symbol over p of a determinant the theory places in the prime
/// subfield. Falls back to the F_q quadratic character if it ever lands
/// outside (which would itself be a reportable failure upstream).
fn symbol_over_p(field: &FieldSpec, el: FieldElement) -> i8 {
    match field.in_prime_field(el) {
        Some(r) => legendre_symbol(r as i64, field.p()),
        None => field.quadratic_character(el),
    }
}

fn seal(mut rec: VerificationRecord) -> VerificationRecord {
    debug_assert_eq!(
        rec.match_value.is_some(),
        rec.brute_value.is_some() && rec.closed_value.is_some(),
        "match_value present iff both value fields present"
    );
    debug_assert_eq!(
        rec.match_symbol.is_some(),
        rec.brute_symbol.is_some() && rec.closed_symbol.is_some(),
        "match_symbol present iff both symbol fields present"
    );
    let flags: Vec<bool> = rec
        .match_value
        .into_iter()
        .chain(rec.match_symbol)
        .collect();
    rec.status = if flags.is_empty() {
        Status::Skip
    } else if flags.iter().all(|&b| b) {
        Status::Pass
    } else {
        match rec.theorem {
            Theorem::ThalfValue => {
                rec.note = "known corollary discrepancy (value branch)".to_string();
                Status::ExpectedMismatch
            }
            Theorem::ThalfSymbol => {
                rec.note = "known corollary discrepancy (symbol branch)".to_string();
                Status::ExpectedMismatch
            }
            _ => Status::Fail,
        }
    };
    rec
}

/// One case, both routes. Inapplicable (q, k, theorem) combinations yield a
/// skip record, never an error. The closed side never reads the brute side.
pub fn verify_case(field: &Arc<FieldSpec>, k: Option<u64>, theorem: Theorem) -> VerificationRecord {
    let rec = match theorem {
        Theorem::DkValue => dk_value(field, k),
        Theorem::DkSymbolOddK => dk_symbol_oddk(field, k),
        Theorem::DhalfValue => dhalf_value(field, k),
        Theorem::DhalfSymbol => dhalf_symbol(field, k),
        Theorem::TkValue => tk_value(field, k),
        Theorem::TkSingularity => tk_singularity(field, k),
        Theorem::ThalfValue => thalf_value(field, k),
        Theorem::ThalfSymbol => thalf_symbol(field, k),
        Theorem::CirculantBridge => circulant_bridge(field, k),
        Theorem::GallerySunRecip => gallery_sun_recip(field, k),
        Theorem::GalleryInvSquares => gallery_inv_squares(field, k),
        Theorem::GallerySdp => gallery_sdp(field, k),
        Theorem::GalleryWsn => gallery_wsn(field, k),
        Theorem::GalleryWuWang => gallery_wu_wang(field, k),
        Theorem::GalleryLuoSun => skip(
            field,
            k,
            Theorem::GalleryLuoSun,
            "no predicted value exists; explore via the gallery subcommand",
        ),
        Theorem::Classnum => classnum_case(field, k),
    };
    seal(rec)
}

fn value_comparison(
    field: &FieldSpec,
    mut rec: VerificationRecord,
    brute: FieldElement,
    closed: &ClosedFormResult,
) -> VerificationRecord {
    let predicted = field.embed_int(closed.value as i64);
    let matched = brute == predicted;
    rec.brute_value = Some(fmt_el(field, brute));
    rec.closed_value = Some(closed.value.to_string());
    rec.match_value = Some(matched);
    if !matched {
        rec.note = components_note(closed);
    }
    rec
}

fn dk_value(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let kv = match admissible_k(field, k, Theorem::DkValue, false) {
        Ok(kv) => kv,
        Err(rec) => return rec,
    };
    let rec = base(field, Some(kv), Theorem::DkValue);
    let brute = build_dk(field, kv).expect("k admissible").determinant();
    let closed = det_dk_closed(field, kv);
    value_comparison(field, rec, brute, &closed)
}

fn tk_value(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let kv = match admissible_k(field, k, Theorem::TkValue, false) {
        Ok(kv) => kv,
        Err(rec) => return rec,
    };
    let rec = base(field, Some(kv), Theorem::TkValue);
    let brute = build_tk(field, kv).expect("k admissible").determinant();
    let closed = det_tk_closed(field, kv);
    value_comparison(field, rec, brute, &closed)
}

fn tk_singularity(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let kv = match admissible_k(field, k, Theorem::TkSingularity, false) {
        Ok(kv) => kv,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(kv), Theorem::TkSingularity);
    let det = build_tk(field, kv).expect("k admissible").determinant();
    let is_singular = det == field.zero();
    let (fires, witness) = tk_singularity_criterion(field, kv);
    rec.brute_value = Some(u64::from(is_singular).to_string());
    rec.closed_value = Some(u64::from(fires).to_string());
    rec.match_value = Some(is_singular == fires);
    rec.note = match witness {
        Some(s) => format!("det={} least vanishing factor index s={s}", fmt_el(field, det)),
        None => format!("det={} no vanishing factor", fmt_el(field, det)),
    };
    rec
}

fn dk_symbol_oddk(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let kv = match admissible_k(field, k, Theorem::DkSymbolOddK, true) {
        Ok(kv) => kv,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(kv), Theorem::DkSymbolOddK);
    let det = build_dk(field, kv).expect("k admissible").determinant();
    let sk = s_k(field, kv).expect("k odd");
    rec.brute_value = Some(fmt_el(field, det));
    if det == field.zero() {
        rec.brute_symbol = Some(0);
        rec.note = format!("matrix singular so the symbol claim does not apply (s_k={sk})");
        return rec;
    }
    rec.brute_symbol = Some(symbol_over_p(field, det));
    rec.closed_symbol = Some(legendre_symbol(sk as i64, field.p()));
    rec.match_symbol = Some(rec.brute_symbol == rec.closed_symbol);
    rec.note = format!("s_k={sk}");
    rec
}

fn dhalf_value(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let half = match half_k(field, k, Theorem::DhalfValue) {
        Ok(h) => h,
        Err(rec) => return rec,
    };
    let rec = base(field, Some(half), Theorem::DhalfValue);
    let brute = build_dk(field, half).expect("(q-1)/2 admissible").determinant();
    let closed = det_dhalf_closed(field).expect("q >= 5");
    value_comparison(field, rec, brute, &closed)
}

fn dhalf_symbol(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let half = match half_k(field, k, Theorem::DhalfSymbol) {
        Ok(h) => h,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(half), Theorem::DhalfSymbol);
    let det = build_dk(field, half).expect("(q-1)/2 admissible").determinant();
    rec.brute_value = Some(fmt_el(field, det));
    rec.brute_symbol = Some(symbol_over_p(field, det));
    if field.n() != 1 {
        rec.note = "stated for prime fields; brute symbol recorded without judgment".to_string();
        return rec;
    }
    let p = field.p();
    let closed = if p % 4 == 1 {
        symbol_dhalf(p, None)
    } else {
        let h = h_by_reduced_forms(p).expect("p prime and 3 mod 4 with p > 3");
        rec.note = format!("h(-{p})={h}");
        symbol_dhalf(p, Some(h))
    };
    rec.closed_symbol = closed;
    rec.match_symbol = Some(rec.brute_symbol == rec.closed_symbol);
    rec
}

fn thalf_value(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let half = match half_k(field, k, Theorem::ThalfValue) {
        Ok(h) => h,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(half), Theorem::ThalfValue);
    let brute = build_tk(field, half).expect("(q-1)/2 admissible").determinant();
    let closed = det_thalf_closed(field).expect("q >= 5");
    rec = value_comparison(field, rec, brute, &closed);
    // seal() rewrites the note on mismatch; the components would be noise.
    rec
}

fn thalf_symbol(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let half = match half_k(field, k, Theorem::ThalfSymbol) {
        Ok(h) => h,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(half), Theorem::ThalfSymbol);
    let det = build_tk(field, half).expect("(q-1)/2 admissible").determinant();
    rec.brute_value = Some(fmt_el(field, det));
    if det == field.zero() {
        rec.brute_symbol = Some(0);
        rec.note = "matrix singular so the symbol claim does not apply".to_string();
        return rec;
    }
    let closed = det_thalf_closed(field).expect("q >= 5");
    rec.brute_symbol = Some(symbol_over_p(field, det));
    rec.closed_symbol = Some(closed.symbol.expect("t-half always predicts a symbol"));
    rec.match_symbol = Some(rec.brute_symbol == rec.closed_symbol);
    rec
}

fn circulant_bridge(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let kv = match admissible_k(field, k, Theorem::CirculantBridge, true) {
        Ok(kv) => kv,
        Err(rec) => return rec,
    };
    let mut rec = base(field, Some(kv), Theorem::CirculantBridge);
    let b = build_circulant_b(field, kv).expect("odd admissible k");
    let mut symmetric = true;
    for i in 1..kv as usize {
        if b[i] != b[kv as usize - i] {
            symmetric = false;
            rec.note = format!("b symmetry violated at i={i}");
            break;
        }
    }
    let det_c = SquareMatrix::circulant(field.clone(), &b).determinant();
    let det_d = build_dk(field, kv).expect("odd admissible k").determinant();
    rec.brute_value = Some(fmt_el(field, det_c));
    rec.closed_value = Some(fmt_el(field, det_d));
    rec.match_value = Some(symmetric && det_c == det_d);
    rec
}

fn gallery_sun_recip(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let p = match prime_only(field, k, Theorem::GallerySunRecip) {
        Ok(p) => p,
        Err(rec) => return rec,
    };
    let mut rec = base(field, None, Theorem::GallerySunRecip);
    let brute = gallery::sun_reciprocal_det(p).expect("p odd prime");
    let (closed, branch) = if p % 4 == 1 {
        let residue = if legendre_symbol(2, p) == 1 { 1 } else { p - 1 };
        (residue, "closed form (2/p) for p = 1 mod 4")
    } else {
        (
            crate::comb::half_factorial(p),
            "closed form ((p-1)/2)! for p = 3 mod 4",
        )
    };
    rec.brute_value = Some(brute.to_string());
    rec.closed_value = Some(closed.to_string());
    rec.match_value = Some(brute == closed);
    rec.note = branch.to_string();
    rec
}

fn gallery_inv_squares(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let p = match prime_only(field, k, Theorem::GalleryInvSquares) {
        Ok(p) => p,
        Err(rec) => return rec,
    };
    if p % 4 != 3 {
        return skip(
            field,
            None,
            Theorem::GalleryInvSquares,
            "not applicable: p must be 3 mod 4",
        );
    }
    let mut rec = base(field, None, Theorem::GalleryInvSquares);
    let brute = gallery::inverse_squares_det(p).expect("p = 3 mod 4");
    let closed = if (p + 1) / 4 % 2 == 1 { p - 1 } else { 1 };
    rec.brute_value = Some(brute.to_string());
    rec.closed_value = Some(closed.to_string());
    rec.match_value = Some(brute == closed);
    rec
}

fn gallery_sdp(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let p = match prime_only(field, k, Theorem::GallerySdp) {
        Ok(p) => p,
        Err(rec) => return rec,
    };
    if p > gallery::SDP_BOUND {
        return skip(
            field,
            k,
            Theorem::GallerySdp,
            "not applicable: p exceeds the exact-computation bound",
        );
    }
    let Some(d) = k else {
        return skip(
            field,
            None,
            Theorem::GallerySdp,
            "not applicable: d parameter required (passed as k)",
        );
    };
    if d == 0 || d % p == 0 {
        return skip(
            field,
            Some(d),
            Theorem::GallerySdp,
            "not applicable: d must be non-zero mod p",
        );
    }
    let mut rec = base(field, Some(d), Theorem::GallerySdp);
    let (s, neg_sym) = gallery::s_dp(p, d as i64).expect("bounds checked");
    rec.brute_value = Some(s.to_string());
    use num_traits::Zero;
    if legendre_symbol(d as i64, p) == -1 {
        rec.closed_value = Some("0".to_string());
        rec.match_value = Some(s.is_zero());
        rec.note = format!("d={d} with (d/p)=-1 so S must vanish");
    } else {
        rec.brute_symbol = Some(neg_sym);
        rec.closed_symbol = Some(1);
        rec.match_symbol = Some(neg_sym == 1);
        rec.note = format!("d={d} with (d/p)=+1 so (-S/p) must be +1");
    }
    rec
}

fn gallery_wsn(field: &Arc<FieldSpec>, _k: Option<u64>) -> VerificationRecord {
    let q = field.q();
    if q % 3 != 2 {
        return skip(
            field,
            None,
            Theorem::GalleryWsn,
            "not applicable: q must be 2 mod 3",
        );
    }
    let mut rec = base(field, None, Theorem::GalleryWsn);
    let brute = gallery::wsn_det(field).expect("q = 2 mod 3");
    let p = field.p();
    let twopow = mod_pow(2 % p, (q - 2) / 3, p);
    let closed = if (q + 1) / 2 % 2 == 1 {
        (p - twopow) % p
    } else {
        twopow
    };
    rec.brute_value = Some(brute.to_string());
    rec.closed_value = Some(closed.to_string());
    rec.match_value = Some(brute == closed);
    rec
}

fn gallery_wu_wang(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let p = match prime_only(field, k, Theorem::GalleryWuWang) {
        Ok(p) => p,
        Err(rec) => return rec,
    };
    let Some(kv) = k else {
        return skip(field, None, Theorem::GalleryWuWang, "not applicable: k parameter required");
    };
    if kv == 0 || kv % 2 != 0 || (p - 1) % kv != 0 {
        return skip(
            field,
            Some(kv),
            Theorem::GalleryWuWang,
            "not applicable: k must be an even divisor of p - 1",
        );
    }
    let m = (p - 1) / kv;
    if m % 2 == 0 {
        return skip(
            field,
            Some(kv),
            Theorem::GalleryWuWang,
            "condition not applicable: -1 is a kth power",
        );
    }
    let mut rec = base(field, Some(kv), Theorem::GalleryWuWang);
    let brute = gallery::wu_wang_det(p, kv).expect("even k with odd m");
    let inv = mod_inverse(mod_pow(2 * kv % p, m, p), p);
    let closed = if (m + 1) / 2 % 2 == 1 { (p - inv) % p } else { inv };
    rec.brute_value = Some(brute.to_string());
    rec.closed_value = Some(closed.to_string());
    rec.match_value = Some(brute == closed);
    rec.note = format!("m={m}");
    rec
}

fn classnum_case(field: &Arc<FieldSpec>, k: Option<u64>) -> VerificationRecord {
    let p = match prime_only(field, k, Theorem::Classnum) {
        Ok(p) => p,
        Err(rec) => return rec,
    };
    if p % 4 != 3 || p <= 3 {
        return skip(
            field,
            None,
            Theorem::Classnum,
            "not applicable: p must be a prime 3 mod 4 exceeding 3",
        );
    }
    let mut rec = base(field, None, Theorem::Classnum);
    let r = class_number_result(p).expect("p checked");
    rec.brute_value = Some(r.h_forms.to_string());
    rec.closed_value = Some(r.h_dirichlet.to_string());
    rec.match_value = Some(r.h_forms == r.h_dirichlet && r.mordell_ok);
    rec.note = if r.mordell_ok {
        "mordell congruence holds".to_string()
    } else {
        "mordell congruence FAILS".to_string()
    };
    rec
}

#[derive(Debug, Clone, Copy)]
struct Case {
    q: u64,
    k: Option<u64>,
    theorem: Theorem,
}

fn enumerate_cases(config: &ScanConfig) -> Vec<Case> {
    let theorems: Vec<Theorem> = config
        .theorems
        .clone()
        .unwrap_or_else(Theorem::scan_default);
    let wanted = |t: Theorem| theorems.contains(&t);
    let mut out = Vec::new();
    let mut push = |q: u64, k: Option<u64>, t: Theorem| {
        if !wanted(t) {
            return;
        }
        if let Some(kf) = config.k {
            if k != Some(kf) {
                return;
            }
        }
        out.push(Case { q, k, theorem: t });
    };
    for q in odd_prime_powers(config.q_max) {
        let qm1 = q - 1;
        let divisors: Vec<u64> = (2..=qm1).filter(|k| qm1 % k == 0).collect();
        for &k in &divisors {
            push(q, Some(k), Theorem::DkValue);
            push(q, Some(k), Theorem::TkValue);
            push(q, Some(k), Theorem::TkSingularity);
            if k % 2 == 1 {
                push(q, Some(k), Theorem::DkSymbolOddK);
                push(q, Some(k), Theorem::CirculantBridge);
            }
        }
        if q >= 5 {
            let half = qm1 / 2;
            push(q, Some(half), Theorem::DhalfValue);
            push(q, Some(half), Theorem::DhalfSymbol);
            push(q, Some(half), Theorem::ThalfValue);
            push(q, Some(half), Theorem::ThalfSymbol);
        }
        if is_odd_prime(q) {
            if (5..=97).contains(&q) {
                push(q, None, Theorem::GallerySunRecip);
            }
            if q % 4 == 3 && q <= 199 {
                push(q, None, Theorem::GalleryInvSquares);
            }
            if q <= gallery::SDP_BOUND {
                for d in 1..q {
                    push(q, Some(d), Theorem::GallerySdp);
                }
            }
            if q <= 97 {
                for &k in divisors.iter().filter(|k| *k % 2 == 0) {
                    push(q, Some(k), Theorem::GalleryWuWang);
                }
            }
            if q % 4 == 3 && q > 3 {
                push(q, None, Theorem::Classnum);
            }
        }
        if q % 3 == 2 && q <= 125 {
            push(q, None, Theorem::GalleryWsn);
        }
    }
    out.sort_by_key(|c| (c.q, c.k.unwrap_or(0), c.theorem));
    out
}

pub fn summarize(records: &[VerificationRecord]) -> Summary {
    let mut summary = Summary {
        total: records.len(),
        pass: 0,
        fail: 0,
        expected_mismatch: 0,
        skip: 0,
        by_theorem: BTreeMap::new(),
    };
    for rec in records {
        let counts = summary.by_theorem.entry(rec.theorem.tag().to_string()).or_default();
        match rec.status {
            Status::Pass => {
                summary.pass += 1;
                counts.pass += 1;
            }
            Status::Fail => {
                summary.fail += 1;
                counts.fail += 1;
            }
            Status::ExpectedMismatch => {
                summary.expected_mismatch += 1;
                counts.expected_mismatch += 1;
            }
            Status::Skip => {
                summary.skip += 1;
                counts.skip += 1;
            }
        }
    }
    summary
}

/// Run every enumerated case, in parallel when jobs > 1. Records come back
/// sorted by (q, k, theorem) whatever the scheduling.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.q_max > FIELD_BOUND {
        return Err(Error::BoundExceeded {
            value: config.q_max,
            bound: FIELD_BOUND,
        });
    }
    let cases = enumerate_cases(config);
    let mut fields: BTreeMap<u64, Arc<FieldSpec>> = BTreeMap::new();
    for case in &cases {
        if !fields.contains_key(&case.q) {
            fields.insert(case.q, Arc::new(FieldSpec::for_q(case.q)?));
        }
    }
    let jobs = config.jobs.max(1);
    let mut records: Vec<VerificationRecord> = if jobs == 1 {
        cases
            .iter()
            .map(|c| verify_case(&fields[&c.q], c.k, c.theorem))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ConditionFailed(format!("worker pool construction failed: {e}")))?;
        pool.install(|| {
            cases
                .par_iter()
                .map(|c| verify_case(&fields[&c.q], c.k, c.theorem))
                .collect()
        })
    };
    records.sort_by_key(|r| (r.q, r.k.unwrap_or(0), r.theorem));
    let summary = summarize(&records);
    Ok(ScanReport { records, summary })
}

pub const CSV_HEADER: &str =
    "q,p,n,k,theorem,brute_value,closed_value,brute_symbol,closed_symbol,match_value,match_symbol,note";

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_num<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let row = [
            r.q.to_string(),
            r.p.to_string(),
            r.n.to_string(),
            opt_num(&r.k),
            r.theorem.tag().to_string(),
            csv_escape(r.brute_value.as_deref().unwrap_or("")),
            csv_escape(r.closed_value.as_deref().unwrap_or("")),
            opt_num(&r.brute_symbol),
            opt_num(&r.closed_symbol),
            opt_num(&r.match_value),
            opt_num(&r.match_symbol),
            csv_escape(&r.note),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    records: &'a [VerificationRecord],
    summary: &'a Summary,
}

pub fn emit_json(records: &[VerificationRecord], summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(&JsonReport { records, summary })
        .expect("report serialization is infallible");
    s.push('\n');
    s
}

/// 0 when nothing unexpectedly mismatched; 1 otherwise. Strict mode counts
/// the documented discrepancies too.
pub fn exit_code(summary: &Summary, strict: bool) -> i32 {
    if summary.fail > 0 || (strict && summary.expected_mismatch > 0) {
        1
    } else {
        0
    }
}
