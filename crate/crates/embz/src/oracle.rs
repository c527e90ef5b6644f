//! The truncation oracle: an independent dense evaluator.
//!
//! The symbolic functional in [`states`](crate::states) evaluates words
//! through closed forms. This module recomputes the same expectations the
//! pedestrian way: restrict the product state to a finite window of qubits,
//! expand it as an explicit (sparse) vector over computational basis
//! strings, and contract `⟨ψ|w|ψ⟩` index by index — still over the exact
//! scalar ring, so agreement is exact equality, not closeness.
//!
//! Truncation is sound because a product state factorizes: a word supported
//! inside the window has the same expectation in the infinite state and in
//! the windowed one (the traced-out blocks each contribute the factor 1).
//!
//! The window size is capped — dense vectors grow as `2^qubits` — by the
//! `EMBZ_QUBIT_CAP` environment variable (default 24, hard ceiling 63 so
//! basis strings fit in a `u64`).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::pauli::{PauliWord, Party, QubitAddress};
use crate::registry::SchmidtVector;
use crate::scalar::RadicalScalar;
use crate::states::{AncillaState, ProductState};
use crate::Error;

/// Environment variable overriding the window qubit cap.
pub const QUBIT_CAP_VAR: &str = "EMBZ_QUBIT_CAP";

/// Default window qubit cap.
pub const DEFAULT_QUBIT_CAP: u64 = 24;

/// Basis strings live in a `u64`, so no cap can exceed this.
const HARD_QUBIT_CEILING: u64 = 63;

/// The active window qubit cap: `EMBZ_QUBIT_CAP` if set to a positive
/// integer, else 24, clamped to the `u64` ceiling.
pub fn qubit_cap() -> u64 {
    parse_cap(std::env::var(QUBIT_CAP_VAR).ok().as_deref())
}

fn parse_cap(var: Option<&str>) -> u64 {
    var.and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|v| *v > 0)
        .unwrap_or(DEFAULT_QUBIT_CAP)
        .min(HARD_QUBIT_CEILING)
}

/// A finite set of addresses — one catalyst register's sites
/// `site_lo..=site_hi` plus a list of ancilla slots, both parties, all
/// lanes — with a fixed bit position per address.
#[derive(Debug, Clone)]
pub struct TruncationWindow {
    register: Arc<SchmidtVector>,
    site_lo: i64,
    site_hi: i64,
    slots: Vec<(u32, u32)>,
    addresses: Vec<QubitAddress>,
    index: BTreeMap<QubitAddress, u32>,
}

impl TruncationWindow {
    /// A window under the environment cap (see [`qubit_cap`]).
    pub fn new(
        register: Arc<SchmidtVector>,
        site_lo: i64,
        site_hi: i64,
        slots: &[(u32, u32)],
    ) -> Result<Self, Error> {
        Self::with_cap(register, site_lo, site_hi, slots, qubit_cap())
    }

    /// A window under an explicit qubit cap.
    pub fn with_cap(
        register: Arc<SchmidtVector>,
        site_lo: i64,
        site_hi: i64,
        slots: &[(u32, u32)],
        cap: u64,
    ) -> Result<Self, Error> {
        if site_lo > site_hi {
            return Err(Error::EmptySiteRange {
                lo: site_lo,
                hi: site_hi,
            });
        }
        let cap = cap.min(HARD_QUBIT_CEILING);
        let sites = (site_hi - site_lo + 1) as u64;
        let slot_lanes: u64 = slots.iter().map(|(_, w)| *w as u64).sum();
        let needed = 2 * (sites * register.width() as u64 + slot_lanes);
        if needed > cap {
            return Err(Error::WindowCap { needed, cap });
        }
        let mut addresses = Vec::with_capacity(needed as usize);
        for party in Party::BOTH {
            for site in site_lo..=site_hi {
                for lane in 0..register.width() {
                    addresses.push(QubitAddress::catalyst(&register, party, site, lane)?);
                }
            }
            for (slot, width) in slots {
                for lane in 0..*width {
                    addresses.push(QubitAddress::ancilla(*slot, party, lane));
                }
            }
        }
        addresses.sort();
        let index = addresses
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i as u32))
            .collect();
        Ok(TruncationWindow {
            register,
            site_lo,
            site_hi,
            slots: slots.to_vec(),
            addresses,
            index,
        })
    }

    pub fn register(&self) -> &Arc<SchmidtVector> {
        &self.register
    }

    pub fn site_range(&self) -> (i64, i64) {
        (self.site_lo, self.site_hi)
    }

    pub fn slots(&self) -> &[(u32, u32)] {
        &self.slots
    }

    /// All window addresses in canonical order; the position of an address
    /// in this slice is its bit position in basis strings.
    pub fn addresses(&self) -> &[QubitAddress] {
        &self.addresses
    }

    pub fn qubits(&self) -> u32 {
        self.addresses.len() as u32
    }

    pub fn contains(&self, addr: &QubitAddress) -> bool {
        self.index.contains_key(addr)
    }

    fn bit(&self, addr: &QubitAddress) -> Option<u32> {
        self.index.get(addr).copied()
    }

    /// Bit positions of one party's lanes of a pair block.
    fn block_positions(
        &self,
        party: Party,
        width: u32,
        mut addr_of: impl FnMut(Party, u32) -> QubitAddress,
    ) -> Vec<u32> {
        (0..width)
            .map(|lane| {
                self.bit(&addr_of(party, lane))
                    .expect("window addresses index themselves")
            })
            .collect()
    }
}

/// The windowed state as an explicit sparse vector: unnormalized amplitudes
/// over basis strings, plus the exact squared norm.
#[derive(Debug, Clone)]
pub struct DenseState {
    amps: BTreeMap<u64, RadicalScalar>,
    norm_sq: RadicalScalar,
    inv_norm_sq: RadicalScalar,
    index: BTreeMap<QubitAddress, u32>,
}

impl DenseState {
    /// Number of basis strings with nonzero amplitude.
    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sq(&self) -> &RadicalScalar {
        &self.norm_sq
    }

    /// `⟨ψ|w|ψ⟩ / ⟨ψ|ψ⟩`, contracted index by index:
    /// `Σ_b conj(amp_{b⊕x}) · (−1)^(z·b) · amp_b`, then normalized.
    pub fn expect(&self, word: &PauliWord) -> Result<RadicalScalar, Error> {
        let mut xmask = 0u64;
        let mut zmask = 0u64;
        for (addr, letter) in word.support() {
            let pos = *self
                .index
                .get(addr)
                .ok_or_else(|| Error::OutsideWindow(addr.to_string()))?;
            if letter.x {
                xmask |= 1 << pos;
            }
            if letter.z {
                zmask |= 1 << pos;
            }
        }
        let mut sum = RadicalScalar::zero();
        for (bits, amp) in &self.amps {
            let Some(partner) = self.amps.get(&(bits ^ xmask)) else {
                continue;
            };
            let term = &partner.conj() * amp;
            if (zmask & bits).count_ones() % 2 == 1 {
                sum = sum - term;
            } else {
                sum = sum + term;
            }
        }
        Ok(sum * &self.inv_norm_sq)
    }

    /// Test hook: corrupt one amplitude in place, so negative controls can
    /// show that a perturbed vector is actually detected.
    #[cfg(test)]
    pub(crate) fn corrupt(&mut self, bits: u64, amp: RadicalScalar) {
        self.amps.insert(bits, amp);
    }
}

/// Expand `state` over `window` as an explicit vector.
///
/// Blank blocks (catalyst sites ≤ 0 and `ZeroZero` slots) pin their bits to
/// zero; each pair block multiplies in one amplitude per Schmidt index, the
/// same index on both parties' lanes. Every slot in the window must be
/// assigned in `state`, and an assigned target must match the declared
/// width.
pub fn build_window_vector(
    state: &ProductState,
    window: &TruncationWindow,
) -> Result<DenseState, Error> {
    // (a-lane positions, b-lane positions, amplitudes, norm)
    let mut blocks: Vec<(Vec<u32>, Vec<u32>, &Arc<SchmidtVector>)> = Vec::new();
    let register = window.register();
    for site in window.site_lo..=window.site_hi {
        if site <= 0 {
            continue; // blank block: all bits stay zero
        }
        let addr_of = |party, lane| {
            QubitAddress::catalyst(register, party, site, lane).expect("window lane in range")
        };
        let a = window.block_positions(Party::A, register.width(), addr_of);
        let b = window.block_positions(Party::B, register.width(), addr_of);
        blocks.push((a, b, register));
    }
    for (slot, width) in &window.slots {
        match state.assignment(*slot) {
            None => return Err(Error::UnassignedSlot(*slot)),
            Some(AncillaState::ZeroZero) => {} // blank block
            Some(AncillaState::Target(target)) => {
                if target.width() != *width {
                    return Err(Error::SlotWidthConflict {
                        slot: *slot,
                        prev: *width,
                        next: target.width(),
                    });
                }
                let addr_of = |party, lane| QubitAddress::ancilla(*slot, party, lane);
                let a = window.block_positions(Party::A, *width, addr_of);
                let b = window.block_positions(Party::B, *width, addr_of);
                blocks.push((a, b, target));
            }
        }
    }

    let mut amps: Vec<(u64, RadicalScalar)> = vec![(0, RadicalScalar::one())];
    let mut norm_sq = RadicalScalar::one();
    for (a_pos, b_pos, vector) in blocks {
        norm_sq = norm_sq * vector.norm_sq();
        let raw = vector.raw_amplitudes();
        let mut next = Vec::with_capacity(amps.len() * raw.len());
        for (bits, amp) in &amps {
            for (i, q) in raw.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let mut b = *bits;
                for (lane, pos) in a_pos.iter().enumerate() {
                    if (i >> lane) & 1 == 1 {
                        b |= 1 << pos;
                    }
                }
                for (lane, pos) in b_pos.iter().enumerate() {
                    if (i >> lane) & 1 == 1 {
                        b |= 1 << pos;
                    }
                }
                next.push((b, amp * q));
            }
        }
        amps = next;
    }
    let inv_norm_sq = norm_sq.recip()?;
    Ok(DenseState {
        amps: amps.into_iter().collect(),
        norm_sq,
        inv_norm_sq,
        index: window.index.clone(),
    })
}

/// The two routes to one expectation value.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    /// Closed-form symbolic value.
    pub symbolic: RadicalScalar,
    /// Dense windowed value.
    pub oracle: RadicalScalar,
    /// Exact structural equality of the two.
    pub equal: bool,
}

/// Evaluate `word` both ways over a prebuilt dense vector.
pub fn compare_with(
    dense: &DenseState,
    state: &ProductState,
    word: &PauliWord,
) -> Result<OracleComparison, Error> {
    let symbolic = state.expect_word(word)?;
    let oracle = dense.expect(word)?;
    let equal = symbolic == oracle;
    Ok(OracleComparison {
        symbolic,
        oracle,
        equal,
    })
}

/// One-shot form of [`compare_with`]; builds the dense vector first.
pub fn oracle_compare(
    state: &ProductState,
    word: &PauliWord,
    window: &TruncationWindow,
) -> Result<OracleComparison, Error> {
    let dense = build_window_vector(state, window)?;
    compare_with(&dense, state, word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{random_word, PauliLetter};
    use crate::scalar::{ratio, sqrt_of_rational};
    use rand::SeedableRng;

    fn bell() -> Arc<SchmidtVector> {
        Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap())
    }

    fn bell_state(reg: &Arc<SchmidtVector>) -> ProductState {
        ProductState::catalyst().with_slot(0, AncillaState::Target(reg.clone()))
    }

    #[test]
    fn cap_parsing_and_bounds() {
        assert_eq!(parse_cap(None), 24);
        assert_eq!(parse_cap(Some("30")), 30);
        assert_eq!(parse_cap(Some(" 16 ")), 16);
        assert_eq!(parse_cap(Some("0")), 24);
        assert_eq!(parse_cap(Some("nope")), 24);
        assert_eq!(parse_cap(Some("999")), 63);
        let reg = bell();
        assert!(matches!(
            TruncationWindow::with_cap(reg.clone(), -3, 3, &[(0, 1)], 10),
            Err(Error::WindowCap { needed: 16, cap: 10 })
        ));
        assert!(matches!(
            TruncationWindow::with_cap(reg, 2, 1, &[], 24),
            Err(Error::EmptySiteRange { lo: 2, hi: 1 })
        ));
    }

    #[test]
    fn window_addresses_are_canonical_and_indexed() {
        let reg = bell();
        let w = TruncationWindow::with_cap(reg.clone(), -1, 1, &[(0, 1)], 24).unwrap();
        assert_eq!(w.qubits(), 8); // 3 sites × 2 parties + 2 slot qubits
        let addrs = w.addresses();
        let mut sorted = addrs.to_vec();
        sorted.sort();
        assert_eq!(addrs, &sorted[..]);
        assert!(w.contains(&QubitAddress::ancilla(0, Party::A, 0)));
        assert!(!w.contains(&QubitAddress::ancilla(1, Party::A, 0)));
    }

    #[test]
    fn dense_vector_shape_for_bell() {
        let reg = bell();
        let state = bell_state(&reg);
        let w = TruncationWindow::with_cap(reg.clone(), -1, 1, &[(0, 1)], 24).unwrap();
        let dense = build_window_vector(&state, &w).unwrap();
        // One pair site and one target slot: 2 × 2 basis strings.
        assert_eq!(dense.support_len(), 4);
        assert_eq!(dense.norm_sq(), &RadicalScalar::from_integer(4));
    }

    #[test]
    fn oracle_matches_symbolic_on_random_words() {
        let regs = [
            bell(),
            Arc::new(SchmidtVector::from_integer_ratios(1, &[2, 1]).unwrap()),
            Arc::new(SchmidtVector::from_integer_ratios(2, &[4, 2, 2, 1]).unwrap()),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for reg in &regs {
            let state = bell_state(reg);
            let w =
                TruncationWindow::with_cap(reg.clone(), -2, 2, &[(0, reg.width())], 63).unwrap();
            let dense = build_window_vector(&state, &w).unwrap();
            for _ in 0..50 {
                let word = random_word(&mut rng, w.addresses(), 4).unwrap();
                let cmp = compare_with(&dense, &state, &word).unwrap();
                assert!(cmp.equal, "mismatch on {} over {}", word, reg);
            }
        }
    }

    #[test]
    fn oracle_handles_exact_mode_targets() {
        let one_plus = RadicalScalar::one() + sqrt_of_rational(&ratio(2, 1)).unwrap();
        let target =
            Arc::new(SchmidtVector::from_amplitudes(1, &[one_plus, RadicalScalar::one()]).unwrap());
        let state = ProductState::catalyst().with_slot(0, AncillaState::Target(target.clone()));
        let w = TruncationWindow::with_cap(target.clone(), -1, 1, &[(0, 1)], 24).unwrap();
        let dense = build_window_vector(&state, &w).unwrap();
        let xx = PauliWord::from_letters([
            (QubitAddress::ancilla(0, Party::A, 0), PauliLetter::X),
            (QubitAddress::ancilla(0, Party::B, 0), PauliLetter::X),
        ]);
        // ⟨XX⟩ = 2(1+√2)/(4+2√2) = √2/2 exactly.
        let expected = sqrt_of_rational(&ratio(1, 2)).unwrap();
        assert_eq!(dense.expect(&xx).unwrap(), expected);
        assert!(compare_with(&dense, &state, &xx).unwrap().equal);
    }

    #[test]
    fn widening_the_window_changes_nothing() {
        let reg = Arc::new(SchmidtVector::from_integer_ratios(1, &[3, 2]).unwrap());
        let state = bell_state(&reg);
        let narrow = TruncationWindow::with_cap(reg.clone(), -1, 1, &[(0, 1)], 63).unwrap();
        let wide = TruncationWindow::with_cap(reg.clone(), -4, 4, &[(0, 1)], 63).unwrap();
        let dn = build_window_vector(&state, &narrow).unwrap();
        let dw = build_window_vector(&state, &wide).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let word = random_word(&mut rng, narrow.addresses(), 3).unwrap();
            assert_eq!(dn.expect(&word).unwrap(), dw.expect(&word).unwrap());
        }
    }

    #[test]
    fn corrupted_amplitudes_are_detected() {
        let reg = bell();
        let state = bell_state(&reg);
        let w = TruncationWindow::with_cap(reg.clone(), -1, 1, &[(0, 1)], 24).unwrap();
        let mut dense = build_window_vector(&state, &w).unwrap();
        // Flip the sign of the largest-index amplitude.
        let (&bits, amp) = dense.amps.iter().next_back().unwrap();
        let flipped = -amp;
        dense.corrupt(bits, flipped);
        let xx = PauliWord::from_letters([
            (QubitAddress::ancilla(0, Party::A, 0), PauliLetter::X),
            (QubitAddress::ancilla(0, Party::B, 0), PauliLetter::X),
        ]);
        let cmp = compare_with(&dense, &state, &xx).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.symbolic, RadicalScalar::one());
    }

    #[test]
    fn window_and_slot_errors_surface() {
        let reg = bell();
        let w = TruncationWindow::with_cap(reg.clone(), -1, 1, &[(0, 1)], 24).unwrap();
        // Unassigned slot
        let empty = ProductState::catalyst();
        assert!(matches!(
            build_window_vector(&empty, &w),
            Err(Error::UnassignedSlot(0))
        ));
        // Word outside the window
        let state = bell_state(&reg);
        let dense = build_window_vector(&state, &w).unwrap();
        let outside = PauliWord::single(
            QubitAddress::catalyst(&reg, Party::A, 5, 0).unwrap(),
            PauliLetter::Z,
        );
        assert!(matches!(
            dense.expect(&outside),
            Err(Error::OutsideWindow(_))
        ));
        // Width mismatch between window slot and assigned target
        let wide = Arc::new(SchmidtVector::from_integer_ratios(2, &[1, 1, 1, 1]).unwrap());
        let mismatched = ProductState::catalyst().with_slot(0, AncillaState::Target(wide));
        assert!(matches!(
            build_window_vector(&mismatched, &w),
            Err(Error::SlotWidthConflict {
                slot: 0,
                prev: 1,
                next: 2
            })
        ));
    }
}
