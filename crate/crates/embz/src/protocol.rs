//! Verification suites, sequential protocols, and target approximation.
//!
//! The embezzlement identity this crate checks is an equality of functionals
//! under the embezzlement morphism `α`: for every word `w`,
//!
//! ```text
//! (catalyst ⊗ blank slot)(α(w))  =  (catalyst ⊗ target slot)(w).
//! ```
//!
//! A *suite* checks it word by word over a finite window: exhaustively for
//! every word of support ≤ 3 (letters from `{X, Z, XZ}`), then on seeded
//! random words of larger support. Both sides are exact scalars, so a case
//! passes only on structural equality. With Schmidt vectors of full support
//! such a window check is how far any finite certificate can go — every
//! word is a finite product of these blocks, and blocks outside the window
//! contribute equal factors to both sides.
//!
//! [`sequential_verify`] chains several extractions: each target gets its
//! own slot, the composite morphism runs the protocols in order (the first
//! protocol outermost as a map on the algebra), and the suite draws words
//! across all registers involved — including catalyst-only words, whose
//! invariance is precisely the statement that the catalysts are returned
//! intact.
//!
//! [`approximate_target`] takes amplitudes that need not have rational
//! squares and searches denominators `d ≤ D` for the best rational-square
//! target `kᵢ/Σk`, `kᵢ = round(tᵢ·d)`, ranked by *exact* fidelity with the
//! requested direction (ties to the smaller denominator). Scanning `d`
//! upward makes the best fidelity non-decreasing in `D` by construction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::morphism::Morphism;
use crate::pauli::{random_word, PauliLetter, PauliWord, Party, QubitAddress};
use crate::registry::SchmidtVector;
use crate::scalar::{sqrt_of_rational, RadicalScalar, Rational};
use crate::states::{AncillaState, ProductState};
use crate::Error;

/// Exhaustive tier: every word of support up to this size is checked.
const EXHAUSTIVE_SUPPORT: usize = 3;

/// Knobs of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    /// Catalyst sites `-radius ..= radius` enter the word window.
    pub radius: i64,
    /// Largest support of randomly drawn words (exhaustive words stay ≤ 3).
    pub max_support: usize,
    /// Number of random words.
    pub samples: usize,
    /// Seed for the random tier.
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            radius: 3,
            max_support: 8,
            samples: 1000,
            seed: 42,
        }
    }
}

/// One verified word with both sides of the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationCase {
    pub word: PauliWord,
    /// Blank-slot side, after the morphism.
    pub lhs: RadicalScalar,
    /// Target-slot side.
    pub rhs: RadicalScalar,
    pub equal: bool,
}

/// How many words each tier checked, and how many failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CaseCounts {
    pub exhaustive: usize,
    pub random: usize,
    pub failed: usize,
}

/// The outcome of a suite. `cases` records the *failing* words (with both
/// exact values), so a pass carries counts only and reports stay bounded.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub params: SuiteParams,
    pub cases: Vec<VerificationCase>,
    pub counts: CaseCounts,
    pub pass: bool,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&VerificationCase> {
        self.cases.first()
    }
}

/// Everything fixed across the words of one suite.
struct SuitePlan {
    morphism: Morphism,
    lhs: ProductState,
    rhs: ProductState,
    window: Vec<QubitAddress>,
}

impl SuitePlan {
    fn single(target: &Arc<SchmidtVector>, slot: u32, morphism: Morphism, radius: i64) -> Self {
        let lhs = ProductState::catalyst().with_slot(slot, AncillaState::ZeroZero);
        let rhs =
            ProductState::catalyst().with_slot(slot, AncillaState::Target(target.clone()));
        SuitePlan {
            morphism,
            lhs,
            rhs,
            window: suite_window(target, slot, radius),
        }
    }

    fn check(&self, word: &PauliWord) -> Result<VerificationCase, Error> {
        let mapped = self.morphism.apply_word(word);
        let lhs = self.lhs.expect_word(&mapped)?;
        let rhs = self.rhs.expect_word(word)?;
        let equal = lhs == rhs;
        Ok(VerificationCase {
            word: word.clone(),
            lhs,
            rhs,
            equal,
        })
    }

    fn run(&self, params: &SuiteParams) -> Result<SuiteReport, Error> {
        let start = Instant::now();
        let mut counts = CaseCounts::default();
        let mut cases = Vec::new();
        for word in exhaustive_words(&self.window, params.max_support.min(EXHAUSTIVE_SUPPORT)) {
            let case = self.check(&word)?;
            counts.exhaustive += 1;
            if !case.equal {
                counts.failed += 1;
                cases.push(case);
            }
        }
        if !self.window.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            for _ in 0..params.samples {
                let word = random_word(&mut rng, &self.window, params.max_support)?;
                let case = self.check(&word)?;
                counts.random += 1;
                if !case.equal {
                    counts.failed += 1;
                    cases.push(case);
                }
            }
        }
        Ok(SuiteReport {
            params: params.clone(),
            cases,
            pass: counts.failed == 0,
            counts,
            elapsed: start.elapsed(),
        })
    }
}

/// The word window of a single-target suite: catalyst sites
/// `-radius..=radius` and the slot, both parties, all lanes.
pub fn suite_window(target: &Arc<SchmidtVector>, slot: u32, radius: i64) -> Vec<QubitAddress> {
    let mut window = Vec::new();
    for party in Party::BOTH {
        for site in -radius..=radius {
            for lane in 0..target.width() {
                window.push(
                    QubitAddress::catalyst(target, party, site, lane)
                        .expect("lane below width"),
                );
            }
        }
        for lane in 0..target.width() {
            window.push(QubitAddress::ancilla(slot, party, lane));
        }
    }
    window.sort();
    window
}

/// Every word over `addresses` with support size `0..=max_support` and
/// letters from `{X, Z, XZ}`, in a deterministic order. The count grows as
/// `Σ C(n,k)·3^k`; keep `max_support` small.
pub fn exhaustive_words(addresses: &[QubitAddress], max_support: usize) -> Vec<PauliWord> {
    const LETTERS: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Z, PauliLetter::XZ];
    let mut words = vec![PauliWord::identity()];
    let n = addresses.len();
    for k in 1..=max_support.min(n) {
        for_each_combination(n, k, |combo| {
            let mut codes = vec![0usize; k];
            loop {
                words.push(PauliWord::from_letters(
                    combo
                        .iter()
                        .zip(&codes)
                        .map(|(&i, &c)| (addresses[i].clone(), LETTERS[c])),
                ));
                // odometer over letter choices
                let mut pos = 0;
                loop {
                    if pos == k {
                        return;
                    }
                    codes[pos] += 1;
                    if codes[pos] < LETTERS.len() {
                        break;
                    }
                    codes[pos] = 0;
                    pos += 1;
                }
            }
        });
    }
    words
}

/// Visit every ascending `k`-subset of `0..n`.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    debug_assert!(k >= 1 && k <= n);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 <= n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Check the embezzlement identity for one word.
pub fn verify_word(
    target: &Arc<SchmidtVector>,
    slot: u32,
    word: &PauliWord,
) -> Result<VerificationCase, Error> {
    let plan = SuitePlan::single(
        target,
        slot,
        Morphism::embezzle(target.clone(), slot),
        0,
    );
    plan.check(word)
}

/// Run a full suite for one target with the genuine embezzlement morphism.
pub fn verify_suite(
    target: &Arc<SchmidtVector>,
    slot: u32,
    params: &SuiteParams,
) -> Result<SuiteReport, Error> {
    verify_suite_with(
        target,
        slot,
        Morphism::embezzle(target.clone(), slot),
        params,
    )
}

/// Run a suite for one target under an arbitrary morphism — this is how
/// negative controls demonstrate that broken protocols fail.
pub fn verify_suite_with(
    target: &Arc<SchmidtVector>,
    slot: u32,
    morphism: Morphism,
    params: &SuiteParams,
) -> Result<SuiteReport, Error> {
    SuitePlan::single(target, slot, morphism, params.radius).run(params)
}

/// Verify a sequential protocol extracting each `(target, slot)` in order.
///
/// The composite morphism applies the first protocol outermost, so its
/// step list is the concatenation of the per-target morphisms in reverse
/// order. The word window is the union of every target's window; an empty
/// target list verifies trivially (the identity word only).
pub fn sequential_verify(
    targets: &[(Arc<SchmidtVector>, u32)],
    params: &SuiteParams,
) -> Result<SuiteReport, Error> {
    let mut seen = BTreeSet::new();
    for (_, slot) in targets {
        if !seen.insert(*slot) {
            return Err(Error::SlotCollision(*slot));
        }
    }
    let mut morphism = Morphism::identity();
    let mut lhs = ProductState::catalyst();
    let mut rhs = ProductState::catalyst();
    let mut window = BTreeSet::new();
    for (target, slot) in targets.iter().rev() {
        morphism = morphism.then(Morphism::embezzle(target.clone(), *slot));
    }
    for (target, slot) in targets {
        lhs.assign(*slot, AncillaState::ZeroZero);
        rhs.assign(*slot, AncillaState::Target(target.clone()));
        window.extend(suite_window(target, *slot, params.radius));
    }
    let plan = SuitePlan {
        morphism,
        lhs,
        rhs,
        window: window.into_iter().collect(),
    };
    plan.run(params)
}

/// A rational-square approximation of an irrational target.
#[derive(Debug, Clone)]
pub struct Approximation {
    /// The chosen register, `q[w;k₀,…]` in primitive form.
    pub target: SchmidtVector,
    /// The denominator whose rounding produced it.
    pub denominator: u64,
    /// Exact squared overlap between the normalized input and the target.
    pub fidelity: RadicalScalar,
    /// Worst componentwise distance `|kᵢ/Σk − tᵢ|` on squared amplitudes.
    pub max_error: Rational,
}

/// Search denominators `1..=max_denominator` for the best rational-square
/// approximation to `amplitudes` (which must be non-negative rationals, not
/// all concentrated on one index), ranked by exact fidelity.
pub fn approximate_target(
    amplitudes: &[Rational],
    max_denominator: u64,
) -> Result<Approximation, Error> {
    use num_traits::{Signed, Zero};
    for (i, a) in amplitudes.iter().enumerate() {
        if a.is_negative() {
            return Err(Error::InvalidAmplitude(i));
        }
    }
    if amplitudes.iter().filter(|a| !a.is_zero()).count() < 2 {
        return Err(Error::DegenerateTarget);
    }
    let len = amplitudes.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(Error::AmplitudeLength(len));
    }
    let width = len.trailing_zeros();
    let norm: Rational = amplitudes.iter().map(|a| a * a).sum();
    let targets: Vec<Rational> = amplitudes.iter().map(|a| a * a / &norm).collect();
    let half = Rational::new(1.into(), 2.into());

    let mut best: Option<Approximation> = None;
    for d in 1..=max_denominator {
        let dr = Rational::from_integer(d.into());
        let k: Vec<Rational> = targets
            .iter()
            .map(|t| (t * &dr + &half).floor())
            .collect();
        if k.iter().filter(|v| !v.is_zero()).count() < 2 {
            continue;
        }
        let total: Rational = k.iter().sum();
        // Exact fidelity (Σ aᵢ√kᵢ)² / (Σa²·Σk).
        let mut overlap = RadicalScalar::zero();
        for (a, ki) in amplitudes.iter().zip(&k) {
            if a.is_zero() || ki.is_zero() {
                continue;
            }
            overlap = overlap + sqrt_of_rational(ki)?.scale_rational(a);
        }
        let fidelity = overlap
            .square()
            .scale_rational(&(&norm * &total).recip());
        let max_error = targets
            .iter()
            .zip(&k)
            .map(|(t, ki)| (ki / &total - t).abs())
            .max()
            .expect("at least two amplitudes");
        let improves = match &best {
            None => true,
            Some(b) => (&fidelity - &b.fidelity)
                .real_sign()
                .expect("fidelity is real")
                .is_gt(),
        };
        if improves {
            best = Some(Approximation {
                target: SchmidtVector::from_ratios(width, &k)?,
                denominator: d,
                fidelity,
                max_error,
            });
        }
    }
    best.ok_or(Error::NoCandidate(max_denominator))
}
