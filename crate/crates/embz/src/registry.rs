//! Schmidt vectors, register keys, and system layouts.
//!
//! A *register* is one two-party resource the verifier can talk about:
//! either a catalyst chain labelled by the Schmidt vector of its entangled
//! pair blocks, or an ancilla slot `tN` where a target state is to appear.
//! Keys are canonical text — two registers are the same register exactly
//! when their key texts are equal — so `q[1;1,1]`, `q[1;2,2]` and
//! `qx[1;1,1]` all name the Bell register.
//!
//! # Amplitude bookkeeping
//!
//! A [`SchmidtVector`] never stores *normalized* amplitudes. They can leave
//! the coefficient ring: the unit vector behind `qx[1;1,-1+(1)*sqrt(2)]`
//! has amplitude `1/√(4-2√2)`, a nested radical. Instead it keeps
//!
//! * `raw` — the amplitudes scaled so the first nonzero one is `1`,
//! * `norm_sq` — the exact sum of their squares, and
//! * the exact squared amplitudes `rawᵢ²/norm_sq`.
//!
//! Every expectation value only ever needs *pairwise products*
//! `qᵢ·qⱼ = rawᵢ·rawⱼ/norm_sq`, which stay in the ring. [`SchmidtVector::pair`]
//! serves exactly those.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::scalar::{sqrt_of_rational, RadicalScalar, Rational};
use crate::Error;

/// Pair-product tables are precomputed up to this width (4^w entries).
const PAIR_TABLE_MAX_WIDTH: u32 = 5;

/// The Schmidt data of one entangled pair block `Σᵢ qᵢ|ii⟩` on `width`
/// qubits per party, with `qᵢ ≥ 0` and at least two nonzero entries.
#[derive(Debug, Clone)]
pub struct SchmidtVector {
    width: u32,
    raw: Vec<RadicalScalar>,
    norm_sq: RadicalScalar,
    inv_norm_sq: RadicalScalar,
    squares: Vec<RadicalScalar>,
    dense: bool,
    key_text: String,
    pairs: Option<Vec<RadicalScalar>>,
}

impl SchmidtVector {
    /// Build from rational *squared* amplitudes (up to overall scale), the
    /// `q[width;...]` form. `ratios.len()` must be `2^width`.
    pub fn from_ratios(width: u32, ratios: &[Rational]) -> Result<Self, Error> {
        check_len(width, ratios.len())?;
        for (i, r) in ratios.iter().enumerate() {
            if r.is_negative() {
                return Err(Error::InvalidAmplitude(i));
            }
        }
        let first = ratios
            .iter()
            .find(|r| !r.is_zero())
            .ok_or(Error::DegenerateTarget)?;
        let raw = ratios
            .iter()
            .map(|r| {
                if r.is_zero() {
                    Ok(RadicalScalar::zero())
                } else {
                    sqrt_of_rational(&(r / first))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::assemble(width, raw)
    }

    /// Convenience form of [`SchmidtVector::from_ratios`] for integer ratios.
    pub fn from_integer_ratios(width: u32, ratios: &[i64]) -> Result<Self, Error> {
        let ratios: Vec<Rational> = ratios
            .iter()
            .map(|n| Rational::from_integer(BigInt::from(*n)))
            .collect();
        Self::from_ratios(width, &ratios)
    }

    /// Build from exact amplitudes (up to overall scale), the
    /// `qx[width;...]` form. Amplitudes must be real and non-negative.
    ///
    /// If every squared amplitude happens to be rational the register folds
    /// into its `q[...]` key, so the two syntaxes cannot alias one register
    /// under two names.
    pub fn from_amplitudes(width: u32, amps: &[RadicalScalar]) -> Result<Self, Error> {
        check_len(width, amps.len())?;
        for (i, a) in amps.iter().enumerate() {
            if !a.is_real() || a.real_sign().map_err(|_| Error::InvalidAmplitude(i))? == Ordering::Less
            {
                return Err(Error::InvalidAmplitude(i));
            }
        }
        let first = amps
            .iter()
            .find(|a| !a.is_zero())
            .ok_or(Error::DegenerateTarget)?;
        let inv = first.recip()?;
        let raw: Vec<RadicalScalar> = amps.iter().map(|a| a * &inv).collect();
        Self::assemble(width, raw)
    }

    /// Shared tail of the constructors: `raw` has its first nonzero entry
    /// scaled to 1 and every entry real and non-negative.
    fn assemble(width: u32, raw: Vec<RadicalScalar>) -> Result<Self, Error> {
        if raw.iter().filter(|a| !a.is_zero()).count() < 2 {
            return Err(Error::DegenerateTarget);
        }
        let norm_sq: RadicalScalar = raw.iter().map(RadicalScalar::square).sum();
        let inv_norm_sq = norm_sq.recip()?;
        let squares: Vec<RadicalScalar> =
            raw.iter().map(|a| a.square() * &inv_norm_sq).collect();
        let dense = squares.iter().all(RadicalScalar::is_rational);
        let key_text = if dense {
            dense_key_text(width, &squares)
        } else {
            exact_key_text(width, &raw)
        };
        let pairs = (width <= PAIR_TABLE_MAX_WIDTH).then(|| {
            let dim = raw.len();
            let mut table = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    table.push(&(&raw[i] * &raw[j]) * &inv_norm_sq);
                }
            }
            table
        });
        Ok(SchmidtVector {
            width,
            raw,
            norm_sq,
            inv_norm_sq,
            squares,
            dense,
            key_text,
            pairs,
        })
    }

    /// Qubits per party in one pair block.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Amplitude count, `2^width`.
    pub fn dim(&self) -> usize {
        self.raw.len()
    }

    /// Scaled amplitudes: first nonzero entry is 1.
    pub fn raw_amplitudes(&self) -> &[RadicalScalar] {
        &self.raw
    }

    /// `Σᵢ rawᵢ²`, exact and strictly positive.
    pub fn norm_sq(&self) -> &RadicalScalar {
        &self.norm_sq
    }

    /// Exact squared amplitudes of the normalized state; they sum to 1.
    pub fn squared_amplitudes(&self) -> &[RadicalScalar] {
        &self.squares
    }

    /// The exact pair product `qᵢ·qⱼ` of normalized amplitudes.
    pub fn pair(&self, i: usize, j: usize) -> RadicalScalar {
        match &self.pairs {
            Some(table) => table[i * self.dim() + j].clone(),
            None => &(&self.raw[i] * &self.raw[j]) * &self.inv_norm_sq,
        }
    }

    /// Normalized amplitudes, when they exist in the ring (i.e. when
    /// `norm_sq` is rational). `q[...]` registers always qualify.
    pub fn unit_amplitudes(&self) -> Option<Vec<RadicalScalar>> {
        let norm = self.norm_sq.as_rational()?;
        let scale = sqrt_of_rational(&norm.recip()).ok()?;
        Some(self.raw.iter().map(|a| a * &scale).collect())
    }

    /// True when every squared amplitude is rational.
    pub fn is_dense(&self) -> bool {
        self.dense
    }

    /// The canonical register key text, e.g. `q[1;1,1]` or
    /// `qx[1;1,-1+(1)*sqrt(2)]`.
    pub fn canonical_key(&self) -> &str {
        &self.key_text
    }
}

fn check_len(width: u32, len: usize) -> Result<(), Error> {
    if width == 0 || width >= usize::BITS || len != 1usize << width {
        return Err(Error::AmplitudeLength(len));
    }
    Ok(())
}

/// `q[w;k0,...,kN]` with the primitive integer vector proportional to the
/// squared amplitudes.
fn dense_key_text(width: u32, squares: &[RadicalScalar]) -> String {
    let rationals: Vec<Rational> = squares
        .iter()
        .map(|s| s.as_rational().expect("dense squares are rational"))
        .collect();
    let lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rationals.iter().map(|r| (r * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    let prim: Vec<String> = ints.iter().map(|k| (k / &gcd).to_string()).collect();
    format!("q[{};{}]", width, prim.join(","))
}

/// `qx[w;a0,...,aN]` with the scaled amplitudes in canonical scalar text.
fn exact_key_text(width: u32, raw: &[RadicalScalar]) -> String {
    let amps: Vec<String> = raw.iter().map(|a| a.to_string()).collect();
    format!("qx[{};{}]", width, amps.join(","))
}

impl PartialEq for SchmidtVector {
    fn eq(&self, other: &Self) -> bool {
        self.key_text == other.key_text
    }
}

impl Eq for SchmidtVector {}

impl PartialOrd for SchmidtVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SchmidtVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_text.cmp(&other.key_text)
    }
}

impl Hash for SchmidtVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key_text.hash(state);
    }
}

impl fmt::Display for SchmidtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key_text)
    }
}

/// A register name: a catalyst chain or an ancilla slot.
///
/// The derived order — catalysts by key text, then ancillas by slot — is the
/// canonical address order used for serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegisterKey {
    Catalyst(Arc<SchmidtVector>),
    Ancilla { slot: u32 },
}

impl RegisterKey {
    pub fn catalyst(vector: SchmidtVector) -> Self {
        RegisterKey::Catalyst(Arc::new(vector))
    }

    pub fn from_arc(vector: Arc<SchmidtVector>) -> Self {
        RegisterKey::Catalyst(vector)
    }

    pub fn ancilla(slot: u32) -> Self {
        RegisterKey::Ancilla { slot }
    }

    pub fn is_catalyst(&self) -> bool {
        matches!(self, RegisterKey::Catalyst(_))
    }

    pub fn schmidt(&self) -> Option<&Arc<SchmidtVector>> {
        match self {
            RegisterKey::Catalyst(v) => Some(v),
            RegisterKey::Ancilla { .. } => None,
        }
    }

    pub fn slot(&self) -> Option<u32> {
        match self {
            RegisterKey::Catalyst(_) => None,
            RegisterKey::Ancilla { slot } => Some(*slot),
        }
    }

    /// Catalyst width per party; ancilla widths live in the layout.
    pub fn width(&self) -> Option<u32> {
        self.schmidt().map(|v| v.width())
    }
}

impl fmt::Display for RegisterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegisterKey::Catalyst(v) => f.write_str(v.canonical_key()),
            RegisterKey::Ancilla { slot } => write!(f, "t{slot}"),
        }
    }
}

/// Arithmetic mode of a run.
///
/// `Dense` admits only registers with rational squared amplitudes (`q[...]`
/// keys); `Exact` admits any amplitudes from the coefficient ring. The two
/// modes share every code path — the split exists so callers can *assert*
/// that a verification stayed in the rational regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dense,
    Exact,
}

/// Declares which ancilla slots exist and how wide each one is, and polices
/// the arithmetic mode for catalyst registers.
#[derive(Debug, Clone)]
pub struct SystemLayout {
    mode: Mode,
    slots: BTreeMap<u32, u32>,
}

impl SystemLayout {
    pub fn new(mode: Mode) -> Self {
        SystemLayout {
            mode,
            slots: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Declare `slot` to hold `width` qubits per party. Re-declaring with
    /// the same width is a no-op; with a different width an error.
    pub fn declare_slot(&mut self, slot: u32, width: u32) -> Result<(), Error> {
        match self.slots.get(&slot) {
            Some(prev) if *prev != width => Err(Error::SlotWidthConflict {
                slot,
                prev: *prev,
                next: width,
            }),
            _ => {
                self.slots.insert(slot, width);
                Ok(())
            }
        }
    }

    pub fn slot_width(&self, slot: u32) -> Option<u32> {
        self.slots.get(&slot).copied()
    }

    pub fn slots(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.slots.iter().map(|(s, w)| (*s, *w))
    }

    /// Check a catalyst register against the mode.
    pub fn admit(&self, vector: &SchmidtVector) -> Result<(), Error> {
        if self.mode == Mode::Dense && !vector.is_dense() {
            return Err(Error::NotDenseEligible(vector.canonical_key().to_string()));
        }
        Ok(())
    }

    /// Admit and wrap a catalyst register.
    pub fn register(&self, vector: SchmidtVector) -> Result<RegisterKey, Error> {
        self.admit(&vector)?;
        Ok(RegisterKey::catalyst(vector))
    }
}


#[cfg(test)]
impl SchmidtVector {
    /// Test helper: `Σ squared amplitudes`, which must be exactly 1.
    fn square_sum_check(&self) -> RadicalScalar {
        self.squares.iter().cloned().sum()
    }
}
