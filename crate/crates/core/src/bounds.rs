//! Volume lower bounds from twist numbers and Dehn filling, and the case
//! filters that reduce small-volume searches to finitely many patterns.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Volume of the regular ideal tetrahedron.
pub const V_TET: f64 = 1.014_941_606_409_653_6;
/// Additive constant of the two-bridge twist-number bound.
pub const TWO_BRIDGE_C: f64 = 2.7066;
/// Volume of 2_1, the least rational-knotoid volume.
pub const V_THRESHOLD: f64 = 5.33349;
/// Augmented link for one twist region.
pub const INTEGER_BASE: f64 = 10.0 * V_TET;
/// Augmented link for two twist regions, both circles kept.
pub const TWO_REGION_BASE: f64 = 17.47714;
/// Two twist regions with only the second one augmented.
pub const TWO_REGION_SUBCASE_BASE: f64 = 13.81328;
/// Augmented link for three twist regions.
pub const THREE_REGION_BASE: f64 = 24.80487;

/// Upper end of every search over twist counts.
const MAX_TWISTS: u64 = 1 << 20;

pub fn two_bridge_lower_bound(tw: u64) -> Result<f64> {
    if tw < 1 {
        return Err(Error::InvalidArgument("twist number must be at least 1".into()));
    }
    Ok(2.0 * V_TET * tw as f64 - TWO_BRIDGE_C)
}

/// Fundamental domain of a maximal cusp. The longitude is real; the
/// meridian is a complex translation, purely imaginary for a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CuspRect {
    pub longitude: f64,
    pub meridian: (f64, f64),
}

impl CuspRect {
    pub fn rect(meridian_len: f64, longitude_len: f64) -> Result<Self> {
        if !(meridian_len > 0.0 && longitude_len > 0.0) {
            return Err(Error::InvalidArgument("cusp lengths must be positive".into()));
        }
        Ok(Self { longitude: longitude_len, meridian: (0.0, meridian_len) })
    }

    pub fn parallelogram(meridian: (f64, f64), longitude_len: f64) -> Result<Self> {
        if !(meridian.1 > 0.0 && longitude_len > 0.0) {
            return Err(Error::InvalidArgument("cusp needs positive longitude and a non-real meridian".into()));
        }
        Ok(Self { longitude: longitude_len, meridian })
    }

    pub fn is_rect(&self) -> bool {
        self.meridian.0 == 0.0
    }

    pub fn meridian_len(&self) -> f64 {
        self.meridian.0.hypot(self.meridian.1)
    }

    /// Length of the (1, n) slope `meridian + n * longitude`; `n` may be
    /// negative, which matters only for parallelograms.
    pub fn slope(&self, n: i64) -> f64 {
        (self.meridian.0 + n as f64 * self.longitude).hypot(self.meridian.1)
    }
}

pub fn rect_slope_length(c: &CuspRect, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("filling index must be at least 1".into()));
    }
    Ok(c.slope(n as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Bound {
    Value(f64),
    /// Some slope is no longer than 2π.
    Inapplicable,
}

impl Bound {
    pub fn value(self) -> Option<f64> {
        match self {
            Bound::Value(v) => Some(v),
            Bound::Inapplicable => None,
        }
    }
}

pub fn dehn_filling_lower_bound(base_vol: f64, slope_lengths: &[f64]) -> Result<Bound> {
    if !(base_vol > 0.0) {
        return Err(Error::InvalidArgument("base volume must be positive".into()));
    }
    let l = slope_lengths
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or_else(|| Error::InvalidArgument("no slopes given".into()))?;
    if l <= 2.0 * PI {
        return Ok(Bound::Inapplicable);
    }
    Ok(Bound::Value((1.0 - (2.0 * PI / l).powi(2)).powf(1.5) * base_vol))
}

/// Shortest slope whose bound exceeds `threshold`, or `None` when no slope
/// can (threshold at or above the base volume).
pub fn critical_slope(base_vol: f64, threshold: f64) -> Option<f64> {
    if threshold >= base_vol {
        return None;
    }
    if threshold <= 0.0 {
        return Some(2.0 * PI);
    }
    Some(2.0 * PI / (1.0 - (threshold / base_vol).powf(2.0 / 3.0)).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Passes,
    Residual,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Passes => "Passes",
            Verdict::Residual => "Residual",
            Verdict::Inapplicable => "Inapplicable",
        })
    }
}

/// One line of a bound report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub case: String,
    pub base_volume: f64,
    pub slopes: Vec<f64>,
    pub bound: Option<f64>,
    pub verdict: Verdict,
}

fn record(case: String, base: f64, slopes: Vec<f64>, threshold: f64) -> Result<BoundRecord> {
    let bound = dehn_filling_lower_bound(base, &slopes)?;
    let verdict = match bound {
        Bound::Inapplicable => Verdict::Inapplicable,
        Bound::Value(v) if v > threshold => Verdict::Passes,
        Bound::Value(_) => Verdict::Residual,
    };
    Ok(BoundRecord { case, base_volume: base, slopes, bound: bound.value(), verdict })
}

fn need_threshold(threshold: f64) -> Result<()> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidArgument("threshold must be positive".into()));
    }
    Ok(())
}

/// Twist counts `1..cutoff` one cusp cannot rule out, with their records.
/// Both twisting directions are scanned on a parallelogram; a count is
/// residual when either direction is.
fn scan_cusp(label: &str, base: f64, cusp: &CuspRect, threshold: f64) -> Result<(Vec<BoundRecord>, Vec<u64>)> {
    if critical_slope(base, threshold).is_none() {
        return Err(Error::InvalidArgument(format!("threshold {threshold} is not below the base volume of {label}")));
    }
    let dirs: &[i64] = if cusp.is_rect() { &[1] } else { &[1, -1] };
    let mut records = Vec::new();
    let mut residual = Vec::new();
    for &dir in dirs {
        let mut n = 1;
        loop {
            if n > MAX_TWISTS {
                return Err(Error::InvalidArgument(format!("no cutoff for {label} below {MAX_TWISTS} twists")));
            }
            let signed = dir * n as i64;
            let r = record(format!("{label} n={signed}"), base, vec![cusp.slope(signed)], threshold)?;
            let done = r.verdict == Verdict::Passes && cusp.slope(signed) < cusp.slope(signed + dir);
            if !done {
                residual.push(n);
            }
            records.push(r);
            if done {
                break;
            }
            n += 1;
        }
    }
    residual.sort_unstable();
    residual.dedup();
    Ok((records, residual))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegerFilter {
    pub records: Vec<BoundRecord>,
    /// Values of `n` in the (1, n) filling left for direct computation.
    pub residual: Vec<u64>,
}

pub fn integer_cusp() -> CuspRect {
    CuspRect::rect(12f64.sqrt(), 4.0).expect("positive")
}

pub fn integer_candidate_filter(threshold: f64) -> Result<IntegerFilter> {
    need_threshold(threshold)?;
    let (records, residual) = scan_cusp("integer", INTEGER_BASE, &integer_cusp(), threshold)?;
    Ok(IntegerFilter { records, residual })
}

/// A family of fillings with some twist counts fixed. Free slots print as
/// letters: `(1,a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CasePattern(pub Vec<Option<u64>>);

impl fmt::Display for CasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut free = (b'a'..=b'z').map(char::from);
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Some(n) => n.to_string(),
                None => free.next().unwrap_or('?').to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionFilter {
    pub base_volume: f64,
    pub cusps: Vec<CuspRect>,
    pub records: Vec<BoundRecord>,
    /// Least twist count per region from which that cusp alone never
    /// spoils the bound.
    pub cutoffs: Vec<u64>,
    pub residual: Vec<CasePattern>,
}

impl RegionFilter {
    /// Whether a bound from these cusps already rules out `twists`.
    pub fn passes(&self, twists: &[u64]) -> bool {
        twists.len() == self.cutoffs.len() && twists.iter().zip(&self.cutoffs).all(|(t, c)| t >= c)
    }
}

/// Filling every augmenting circle at once: the bound uses the shortest of
/// the slopes, so it exceeds the threshold exactly when every region is at
/// or past its own cutoff. The residual is one pattern per region and
/// small count, with the other regions free.
pub fn region_filter(base_vol: f64, cusps: &[CuspRect], threshold: f64) -> Result<RegionFilter> {
    need_threshold(threshold)?;
    let mut records = Vec::new();
    let mut cutoffs = Vec::new();
    let mut residual = Vec::new();
    for (i, c) in cusps.iter().enumerate() {
        let (rs, small) = scan_cusp(&format!("region{}", i + 1), base_vol, c, threshold)?;
        records.extend(rs);
        cutoffs.push(small.last().map_or(1, |n| n + 1));
        for n in small {
            let mut p = vec![None; cusps.len()];
            p[i] = Some(n);
            residual.push(CasePattern(p));
        }
    }
    Ok(RegionFilter { base_volume: base_vol, cusps: cusps.to_vec(), records, cutoffs, residual })
}

pub fn two_region_cusps() -> Vec<CuspRect> {
    vec![CuspRect::rect(2.0, 4.0).expect("positive"), CuspRect::rect(2.0, 3f64.sqrt() + 1.0).expect("positive")]
}

pub fn two_region_filter(threshold: f64) -> Result<RegionFilter> {
    region_filter(TWO_REGION_BASE, &two_region_cusps(), threshold)
}

/// One twist in the first region, the second augmented; its cusp is sheared.
pub fn two_region_subcase_cusp() -> CuspRect {
    CuspRect::parallelogram((1.0, 2.0 * 3f64.sqrt() + 1.0), 4.0).expect("positive")
}

pub fn two_region_subcase_filter(threshold: f64) -> Result<RegionFilter> {
    region_filter(TWO_REGION_SUBCASE_BASE, &[two_region_subcase_cusp()], threshold)
}

pub fn three_region_cusps() -> Vec<CuspRect> {
    vec![
        CuspRect::rect(2.0, 4.0).expect("positive"),
        CuspRect::rect(2.0, 2.0).expect("positive"),
        CuspRect::rect(2.0 * 3f64.sqrt() + 2.0, 4.0).expect("positive"),
    ]
}

pub fn three_region_filter(threshold: f64) -> Result<RegionFilter> {
    region_filter(THREE_REGION_BASE, &three_region_cusps(), threshold)
}
