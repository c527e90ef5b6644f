//! Product-state functionals and their closed-form word expectations.
//!
//! The states this crate evaluates are infinite products of three kinds of
//! blocks, one per (register, site) or ancilla slot:
//!
//! * **blank blocks** `|0…0⟩` — every qubit of both parties in `|0⟩`;
//! * **pair blocks** `Σᵢ qᵢ|ii⟩` — a Schmidt vector shared by the parties;
//! * **ancilla slots** — either a blank pair ([`AncillaState::ZeroZero`]) or
//!   an extracted target ([`AncillaState::Target`]).
//!
//! On a catalyst chain, sites `≤ 0` are blank and sites `≥ 1` carry the
//! register's pair block. A Pauli word factorizes over blocks, so its
//! expectation is the product of two closed forms:
//!
//! * [`zero_expect`]: `⟨0|X^x Z^z|0⟩ = [x = 0]` per qubit;
//! * [`phi_expect`]: for letters with lane masks `(xa, za)` and `(xb, zb)`
//!   on the two halves of a pair block,
//!
//!   ```text
//!   ⟨φ|P_A ⊗ P_B|φ⟩ = [xa = xb] · Σⱼ q_{j⊕xa}·qⱼ·(−1)^((za⊕zb)·j)
//!   ```
//!
//!   where `(za⊕zb)·j` is the bit-parity pairing. Everything stays in the
//!   exact scalar ring because only pair products `qᵢqⱼ` appear.
//!
//! The independent dense-matrix oracle in the test module recomputes pair
//! block expectations from explicit basis expansions; the closed form is
//! checked against it exhaustively for one-lane registers.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::pauli::{AlgebraElement, PauliLetter, PauliWord, Party};
use crate::registry::{RegisterKey, SchmidtVector};
use crate::scalar::RadicalScalar;
use crate::Error;

/// What occupies one ancilla slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AncillaState {
    /// The blank pair `|0…0⟩ ⊗ |0…0⟩`.
    ZeroZero,
    /// An extracted target pair block.
    Target(Arc<SchmidtVector>),
}

/// A product-state functional: the catalyst chains (implicit — blank at
/// sites `≤ 0`, pair blocks at sites `≥ 1`, for every catalyst register)
/// together with explicit assignments for the ancilla slots a word may
/// touch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProductState {
    slots: BTreeMap<u32, AncillaState>,
}

impl ProductState {
    /// The pure catalyst functional, with no ancilla assignments.
    pub fn catalyst() -> Self {
        Self::default()
    }

    pub fn with_slot(mut self, slot: u32, state: AncillaState) -> Self {
        self.assign(slot, state);
        self
    }

    pub fn assign(&mut self, slot: u32, state: AncillaState) {
        self.slots.insert(slot, state);
    }

    pub fn assignment(&self, slot: u32) -> Option<&AncillaState> {
        self.slots.get(&slot)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (u32, &AncillaState)> {
        self.slots.iter().map(|(s, a)| (*s, a))
    }

    /// The expectation of a single word: the product of per-block closed
    /// forms. Errors when the word touches an unassigned slot or a lane
    /// beyond a target's width.
    pub fn expect_word(&self, word: &PauliWord) -> Result<RadicalScalar, Error> {
        // Group the support into blocks.
        let mut catalyst_blocks: BTreeMap<(RegisterKey, i64), Vec<LaneLetter>> = BTreeMap::new();
        let mut slot_blocks: BTreeMap<u32, Vec<LaneLetter>> = BTreeMap::new();
        for (addr, letter) in word.support() {
            let entry = (addr.party(), addr.lane(), letter);
            match addr.ancilla_slot() {
                Some(slot) => slot_blocks.entry(slot).or_default().push(entry),
                None => catalyst_blocks
                    .entry((addr.register().clone(), addr.site().expect("catalyst site")))
                    .or_default()
                    .push(entry),
            }
        }

        let mut value = RadicalScalar::one();
        for ((register, site), letters) in &catalyst_blocks {
            let factor = if *site <= 0 {
                zero_expect(letters.iter().map(|(_, _, l)| *l))
            } else {
                let vector = register.schmidt().expect("catalyst register");
                phi_expect_lanes(vector, letters)?
            };
            if factor.is_zero() {
                return Ok(RadicalScalar::zero());
            }
            value = value * factor;
        }
        for (slot, letters) in &slot_blocks {
            let factor = match self.slots.get(slot) {
                None => return Err(Error::UnassignedSlot(*slot)),
                Some(AncillaState::ZeroZero) => {
                    zero_expect(letters.iter().map(|(_, _, l)| *l))
                }
                Some(AncillaState::Target(vector)) => phi_expect_lanes(vector, letters)?,
            };
            if factor.is_zero() {
                return Ok(RadicalScalar::zero());
            }
            value = value * factor;
        }
        Ok(value)
    }

    /// The functional applied to an algebra element, term by term.
    pub fn evaluate(&self, element: &AlgebraElement) -> Result<RadicalScalar, Error> {
        let mut value = RadicalScalar::zero();
        for (word, coeff) in element.terms() {
            value = value + coeff * &self.expect_word(word)?;
        }
        Ok(value)
    }
}

type LaneLetter = (Party, u32, PauliLetter);

/// `⟨0…0|w|0…0⟩` for letters on a blank block: `1` if no letter has an `X`
/// component, else `0` (each `Z` fixes `|0⟩` with eigenvalue `+1`).
pub fn zero_expect(letters: impl IntoIterator<Item = PauliLetter>) -> RadicalScalar {
    for letter in letters {
        if letter.x {
            return RadicalScalar::zero();
        }
    }
    RadicalScalar::one()
}

/// `⟨φ|P_A ⊗ P_B|φ⟩` for a pair block `φ = Σᵢ qᵢ|ii⟩`, with the per-party
/// letters given as `(lane, letter)` pairs. Lanes must be below the width.
pub fn phi_expect(
    vector: &SchmidtVector,
    alice: &[(u32, PauliLetter)],
    bob: &[(u32, PauliLetter)],
) -> Result<RadicalScalar, Error> {
    let mut masks = LetterMasks::default();
    for (lane, letter) in alice {
        masks.fold(vector, Party::A, *lane, *letter)?;
    }
    for (lane, letter) in bob {
        masks.fold(vector, Party::B, *lane, *letter)?;
    }
    Ok(masks.expectation(vector))
}

fn phi_expect_lanes(
    vector: &SchmidtVector,
    letters: &[LaneLetter],
) -> Result<RadicalScalar, Error> {
    let mut masks = LetterMasks::default();
    for (party, lane, letter) in letters {
        masks.fold(vector, *party, *lane, *letter)?;
    }
    Ok(masks.expectation(vector))
}

/// Per-party `X`/`Z` lane masks of the letters acting on one pair block.
#[derive(Default)]
struct LetterMasks {
    xa: usize,
    za: usize,
    xb: usize,
    zb: usize,
}

impl LetterMasks {
    fn fold(
        &mut self,
        vector: &SchmidtVector,
        party: Party,
        lane: u32,
        letter: PauliLetter,
    ) -> Result<(), Error> {
        if lane >= vector.width() {
            return Err(Error::LaneOutOfRange {
                lane,
                width: vector.width(),
            });
        }
        let bit = 1usize << lane;
        // Lanes are distinct within a word, so XOR never cancels here.
        let (x, z) = match party {
            Party::A => (&mut self.xa, &mut self.za),
            Party::B => (&mut self.xb, &mut self.zb),
        };
        if letter.x {
            *x ^= bit;
        }
        if letter.z {
            *z ^= bit;
        }
        Ok(())
    }

    /// `[xa = xb] · Σⱼ q_{j⊕xa}·qⱼ·(−1)^((za⊕zb)·j)`.
    fn expectation(&self, vector: &SchmidtVector) -> RadicalScalar {
        if self.xa != self.xb {
            return RadicalScalar::zero();
        }
        let x = self.xa;
        let z = self.za ^ self.zb;
        let mut sum = RadicalScalar::zero();
        for j in 0..vector.dim() {
            let pair = vector.pair(j ^ x, j);
            if pair.is_zero() {
                continue;
            }
            if (z & j).count_ones() % 2 == 1 {
                sum = sum - pair;
            } else {
                sum = sum + pair;
            }
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::QubitAddress;
    use crate::scalar::{ratio, sqrt_of_rational};

    /// Independent oracle: expand the pair block `Σᵢ rawᵢ|ii⟩` as a dense
    /// two-party vector and contract `⟨φ|P_A⊗P_B|φ⟩/⟨φ|φ⟩` index by index,
    /// using `P|b⟩ = (−1)^(z·b)|b⊕x⟩` per party. No shared code with
    /// `phi_expect` beyond the scalar ring.
    fn dense_phi_oracle(
        vector: &SchmidtVector,
        alice: &[(u32, PauliLetter)],
        bob: &[(u32, PauliLetter)],
    ) -> RadicalScalar {
        let dim = vector.dim();
        let mask = |letters: &[(u32, PauliLetter)]| {
            let mut x = 0usize;
            let mut z = 0usize;
            for (lane, l) in letters {
                if l.x {
                    x |= 1 << lane;
                }
                if l.z {
                    z |= 1 << lane;
                }
            }
            (x, z)
        };
        let (xa, za) = mask(alice);
        let (xb, zb) = mask(bob);
        let raw = vector.raw_amplitudes();
        let mut num = RadicalScalar::zero();
        for i in 0..dim {
            for j in 0..dim {
                // amplitude of |i⟩|j⟩ in φ is rawᵢ·δᵢⱼ
                if i != j {
                    continue;
                }
                let phase = ((za & i).count_ones() + (zb & j).count_ones()) % 2;
                let (ti, tj) = (i ^ xa, j ^ xb);
                // ⟨φ|ti,tj⟩ = raw_ti·δ_{ti,tj}
                if ti != tj {
                    continue;
                }
                let term = &raw[ti] * &raw[i];
                num = if phase == 1 { num - term } else { num + term };
            }
        }
        num * vector.norm_sq().recip().unwrap()
    }

    fn letters_of(width: u32, code: usize) -> Vec<(u32, PauliLetter)> {
        // code encodes one of 4^width letter choices
        let mut out = Vec::new();
        for lane in 0..width {
            let pick = (code >> (2 * lane)) & 3;
            let letter = match pick {
                0 => PauliLetter::I,
                1 => PauliLetter::X,
                2 => PauliLetter::Z,
                _ => PauliLetter::XZ,
            };
            if !letter.is_identity() {
                out.push((lane, letter));
            }
        }
        out
    }

    #[test]
    fn phi_expect_matches_dense_oracle_exhaustively() {
        let vectors = [
            SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap(),
            SchmidtVector::from_integer_ratios(1, &[2, 1]).unwrap(),
            SchmidtVector::from_integer_ratios(1, &[3, 2]).unwrap(),
            SchmidtVector::from_integer_ratios(2, &[4, 2, 2, 1]).unwrap(),
        ];
        for v in &vectors {
            let codes = 1usize << (2 * v.width());
            for a in 0..codes {
                for b in 0..codes {
                    let alice = letters_of(v.width(), a);
                    let bob = letters_of(v.width(), b);
                    let fast = phi_expect(v, &alice, &bob).unwrap();
                    let slow = dense_phi_oracle(v, &alice, &bob);
                    assert_eq!(fast, slow, "mismatch for {} a={a} b={b}", v);
                }
            }
        }
    }

    #[test]
    fn bell_pair_expectations() {
        // Frozen values for the Bell block: ⟨XX⟩ = ⟨ZZ⟩ = 1, ⟨XZ⟩ = 0,
        // ⟨(XZ)(XZ)⟩ = 1, single-sided letters vanish except identities.
        let bell = SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap();
        let x = [(0, PauliLetter::X)];
        let z = [(0, PauliLetter::Z)];
        let xz = [(0, PauliLetter::XZ)];
        let one = RadicalScalar::one();
        assert_eq!(phi_expect(&bell, &x, &x).unwrap(), one);
        assert_eq!(phi_expect(&bell, &z, &z).unwrap(), one);
        assert_eq!(phi_expect(&bell, &x, &z).unwrap(), RadicalScalar::zero());
        assert_eq!(phi_expect(&bell, &xz, &xz).unwrap(), one);
        assert_eq!(phi_expect(&bell, &x, &[]).unwrap(), RadicalScalar::zero());
        assert_eq!(phi_expect(&bell, &[], &[]).unwrap(), one);
        // The familiar ⟨Y⊗Y⟩ = −1 is recovered by the caller: each Y
        // carries a coefficient i, so Y⊗Y = i²·(XZ⊗XZ) = −⟨XZ⊗XZ⟩.
    }

    #[test]
    fn skew_pair_expectations() {
        // q[1;2,1]: q₀² = 2/3, q₁² = 1/3, q₀q₁ = √2/3.
        let v = SchmidtVector::from_integer_ratios(1, &[2, 1]).unwrap();
        let x = [(0, PauliLetter::X)];
        let z = [(0, PauliLetter::Z)];
        let sqrt2 = sqrt_of_rational(&ratio(2, 1)).unwrap();
        let expected_xx = sqrt2.scale_rational(&ratio(2, 3));
        assert_eq!(phi_expect(&v, &x, &x).unwrap(), expected_xx);
        // ⟨ZZ⟩: the Z masks cancel (za⊕zb = 0), leaving Σ qⱼ² = 1.
        assert_eq!(phi_expect(&v, &z, &z).unwrap(), RadicalScalar::one());
        // One-sided Z: za⊕zb = 1, so q₀² − q₁² = 1/3.
        assert_eq!(
            phi_expect(&v, &z, &[]).unwrap(),
            RadicalScalar::from_rational(ratio(1, 3))
        );
    }

    #[test]
    fn exact_mode_pair_expectations() {
        // Amplitudes (1+√2, 1): ⟨XX⟩ = 2q₀q₁ = 2(1+√2)/(4+2√2) = √2/2.
        let one_plus = RadicalScalar::one() + sqrt_of_rational(&ratio(2, 1)).unwrap();
        let v = SchmidtVector::from_amplitudes(1, &[one_plus, RadicalScalar::one()]).unwrap();
        let x = [(0, PauliLetter::X)];
        let expected = sqrt_of_rational(&ratio(1, 2)).unwrap();
        assert_eq!(phi_expect(&v, &x, &x).unwrap(), expected);
    }

    #[test]
    fn lane_bounds_are_policed() {
        let bell = SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap();
        let bad = [(1, PauliLetter::X)];
        assert_eq!(
            phi_expect(&bell, &bad, &[]),
            Err(Error::LaneOutOfRange { lane: 1, width: 1 })
        );
    }

    #[test]
    fn blank_blocks_kill_x_components() {
        assert!(zero_expect([PauliLetter::Z, PauliLetter::Z]).is_one());
        assert!(zero_expect([]).is_one());
        assert!(zero_expect([PauliLetter::X]).is_zero());
        assert!(zero_expect([PauliLetter::XZ]).is_zero());
    }

    #[test]
    fn product_state_factorizes_over_blocks() {
        let bell = Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap());
        let state = ProductState::catalyst();
        // Z at a blank site times ZZ across a pair site: 1·1 = 1
        let word = PauliWord::from_letters([
            (
                QubitAddress::catalyst(&bell, Party::A, -1, 0).unwrap(),
                PauliLetter::Z,
            ),
            (
                QubitAddress::catalyst(&bell, Party::A, 2, 0).unwrap(),
                PauliLetter::Z,
            ),
            (
                QubitAddress::catalyst(&bell, Party::B, 2, 0).unwrap(),
                PauliLetter::Z,
            ),
        ]);
        assert!(state.expect_word(&word).unwrap().is_one());
        // X at a blank site kills the product
        let killed = PauliWord::single(
            QubitAddress::catalyst(&bell, Party::A, 0, 0).unwrap(),
            PauliLetter::X,
        );
        assert!(state.expect_word(&killed).unwrap().is_zero());
        // X on one half of a pair site kills it too
        let half = PauliWord::single(
            QubitAddress::catalyst(&bell, Party::A, 1, 0).unwrap(),
            PauliLetter::X,
        );
        assert!(state.expect_word(&half).unwrap().is_zero());
    }

    #[test]
    fn slots_require_assignment() {
        let bell = Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap());
        let word = PauliWord::from_letters([
            (QubitAddress::ancilla(0, Party::A, 0), PauliLetter::X),
            (QubitAddress::ancilla(0, Party::B, 0), PauliLetter::X),
        ]);
        let state = ProductState::catalyst();
        assert_eq!(state.expect_word(&word), Err(Error::UnassignedSlot(0)));
        let blank = state.clone().with_slot(0, AncillaState::ZeroZero);
        assert!(blank.expect_word(&word).unwrap().is_zero());
        let filled = state.with_slot(0, AncillaState::Target(bell));
        assert!(filled.expect_word(&word).unwrap().is_one());
    }

    #[test]
    fn evaluate_is_linear_and_handles_identity() {
        let bell = Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap());
        let state = ProductState::catalyst().with_slot(0, AncillaState::Target(bell));
        let xx = PauliWord::from_letters([
            (QubitAddress::ancilla(0, Party::A, 0), PauliLetter::X),
            (QubitAddress::ancilla(0, Party::B, 0), PauliLetter::X),
        ]);
        // 3 + 2·XX evaluates to 3 + 2 = 5
        let mut elem = AlgebraElement::from_scalar(RadicalScalar::from_integer(3));
        elem.add_term(xx, RadicalScalar::from_integer(2));
        assert_eq!(
            state.evaluate(&elem).unwrap(),
            RadicalScalar::from_integer(5)
        );
        assert!(state.evaluate(&AlgebraElement::zero()).unwrap().is_zero());
    }

    #[test]
    fn functional_is_positive_on_random_elements() {
        // ω(a†a) ≥ 0 and Im ω(a†a) = 0, spot-checked through the float view.
        use crate::pauli::random_word;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let bell = Arc::new(SchmidtVector::from_integer_ratios(1, &[2, 1]).unwrap());
        let state = ProductState::catalyst().with_slot(0, AncillaState::Target(bell.clone()));
        let mut window = Vec::new();
        for site in -1..=2 {
            for party in Party::BOTH {
                window.push(QubitAddress::catalyst(&bell, party, site, 0).unwrap());
            }
        }
        for party in Party::BOTH {
            window.push(QubitAddress::ancilla(0, party, 0));
        }
        for _ in 0..60 {
            let mut elem = AlgebraElement::zero();
            for k in 0..3 {
                let word = random_word(&mut rng, &window, 3).unwrap();
                let coeff = match k {
                    0 => RadicalScalar::one(),
                    1 => RadicalScalar::i(),
                    _ => sqrt_of_rational(&ratio(2, 1)).unwrap(),
                };
                elem.add_term(word, coeff);
            }
            let value = state.evaluate(&(&elem.adjoint() * &elem)).unwrap();
            let (re, im) = value.to_f64_parts(12);
            assert!(re > -1e-12, "ω(a†a) = {re} < 0");
            assert_eq!(im, 0.0);
            assert!(value.is_real());
        }
    }
}
