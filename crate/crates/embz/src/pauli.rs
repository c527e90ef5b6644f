//! Finitely supported Pauli words and the `*`-algebra they span.
//!
//! A qubit is named by a [`QubitAddress`]: a party, a register, a chain site
//! (for catalyst registers) and a lane. A [`PauliWord`] stores, for the
//! finitely many addresses it touches, a letter `X^a Z^b` — the letter `XZ`
//! means *X times Z in that order*. Words multiply up to sign,
//!
//! ```text
//! (X^a Z^b)·(X^c Z^d) = (−1)^(b∧c) X^(a⊕c) Z^(b⊕d)        per address,
//! ```
//!
//! and the sign of a product is the parity of all such reorderings. `Y`
//! never appears as a stored letter: the parser rewrites it as `i·XZ`, so
//! phases live in coefficients and signs stay in `{±1}`.
//!
//! [`AlgebraElement`] is a finite linear combination of words with
//! [`RadicalScalar`](crate::scalar::RadicalScalar) coefficients, in canonical
//! form: words are sorted, zero coefficients dropped, so equality of
//! elements is equality in the algebra.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::registry::{RegisterKey, SchmidtVector};
use crate::scalar::RadicalScalar;
use crate::Error;

/// One of the two parties holding half of every register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub const BOTH: [Party; 2] = [Party::A, Party::B];
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::A => "A",
            Party::B => "B",
        })
    }
}

/// A single qubit: `(party, register, site, lane)`.
///
/// Catalyst registers extend over all integer sites; ancilla registers have
/// no site (it is stored as 0 so the derived order stays total). The derived
/// `Ord` — party, register key, site, lane — is the canonical address order
/// used everywhere words are printed or serialized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitAddress {
    party: Party,
    register: RegisterKey,
    site: i64,
    lane: u32,
}

impl QubitAddress {
    /// A qubit on a catalyst chain. `lane` must be below the register width.
    pub fn catalyst(
        vector: &Arc<SchmidtVector>,
        party: Party,
        site: i64,
        lane: u32,
    ) -> Result<Self, Error> {
        if lane >= vector.width() {
            return Err(Error::LaneOutOfRange {
                lane,
                width: vector.width(),
            });
        }
        Ok(QubitAddress {
            party,
            register: RegisterKey::from_arc(vector.clone()),
            site,
            lane,
        })
    }

    /// A qubit in an ancilla slot. Lane bounds are policed at evaluation
    /// time, against whatever state occupies the slot.
    pub fn ancilla(slot: u32, party: Party, lane: u32) -> Self {
        QubitAddress {
            party,
            register: RegisterKey::ancilla(slot),
            site: 0,
            lane,
        }
    }

    pub(crate) fn with_parts(
        party: Party,
        register: RegisterKey,
        site: i64,
        lane: u32,
    ) -> Self {
        QubitAddress {
            party,
            register,
            site,
            lane,
        }
    }

    pub fn party(&self) -> Party {
        self.party
    }

    pub fn register(&self) -> &RegisterKey {
        &self.register
    }

    /// Chain site, for catalyst addresses.
    pub fn site(&self) -> Option<i64> {
        self.register.is_catalyst().then_some(self.site)
    }

    pub fn lane(&self) -> u32 {
        self.lane
    }

    pub fn is_ancilla(&self) -> bool {
        !self.register.is_catalyst()
    }

    pub fn ancilla_slot(&self) -> Option<u32> {
        self.register.slot()
    }
}

impl fmt::Display for QubitAddress {
    /// `party:register[:site][:lane]` — the site appears only for catalyst
    /// addresses, the lane only when nonzero: `A:q[1;1,1]:-3`, `B:t0`,
    /// `A:q[2;4,2,2,1]:1:1`, `B:t2:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.party, self.register)?;
        if self.register.is_catalyst() {
            write!(f, ":{}", self.site)?;
        }
        if self.lane != 0 {
            write!(f, ":{}", self.lane)?;
        }
        Ok(())
    }
}

/// A single-qubit Pauli letter `X^x Z^z` (in that order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PauliLetter {
    pub x: bool,
    pub z: bool,
}

impl PauliLetter {
    pub const I: PauliLetter = PauliLetter { x: false, z: false };
    pub const X: PauliLetter = PauliLetter { x: true, z: false };
    pub const Z: PauliLetter = PauliLetter { x: false, z: true };
    pub const XZ: PauliLetter = PauliLetter { x: true, z: true };

    pub fn is_identity(self) -> bool {
        !self.x && !self.z
    }

    /// The letter of a product, ignoring sign.
    fn xor(self, rhs: PauliLetter) -> PauliLetter {
        PauliLetter {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
        }
    }
}

/// A sign in `{+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn scalar(self) -> RadicalScalar {
        match self {
            Sign::Plus => RadicalScalar::one(),
            Sign::Minus => RadicalScalar::from_integer(-1),
        }
    }

    pub fn apply(self, s: &RadicalScalar) -> RadicalScalar {
        match self {
            Sign::Plus => s.clone(),
            Sign::Minus => -s,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) ^ (rhs == Sign::Minus))
    }
}

/// A finitely supported product of Pauli letters, one per address.
///
/// The empty word is the algebra identity. Identity letters are never
/// stored, so the support is exactly the set of non-trivially touched
/// addresses and structural equality is equality of operators up to sign
/// conventions (there are none: a word *is* the ordered product
/// `Π X^a Z^b` over its sorted addresses — letters at distinct addresses
/// commute, so the order does not matter).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PauliWord {
    letters: BTreeMap<QubitAddress, PauliLetter>,
}

impl PauliWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The word with one letter. An identity letter gives the identity word.
    pub fn single(addr: QubitAddress, letter: PauliLetter) -> Self {
        let mut w = Self::identity();
        w.apply_letter(addr, letter);
        w
    }

    /// Collect letters, combining repeats by product *up to sign*; intended
    /// for callers that guarantee distinct addresses.
    pub(crate) fn from_letters(
        letters: impl IntoIterator<Item = (QubitAddress, PauliLetter)>,
    ) -> Self {
        let mut w = Self::identity();
        for (addr, letter) in letters {
            w.apply_letter(addr, letter);
        }
        w
    }

    fn apply_letter(&mut self, addr: QubitAddress, letter: PauliLetter) {
        if letter.is_identity() {
            return;
        }
        match self.letters.entry(addr) {
            Entry::Vacant(e) => {
                e.insert(letter);
            }
            Entry::Occupied(mut e) => {
                let combined = e.get().xor(letter);
                if combined.is_identity() {
                    e.remove();
                } else {
                    *e.get_mut() = combined;
                }
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of addresses with a non-identity letter.
    pub fn support_len(&self) -> usize {
        self.letters.len()
    }

    /// `(address, letter)` pairs in canonical address order.
    pub fn support(&self) -> impl Iterator<Item = (&QubitAddress, PauliLetter)> {
        self.letters.iter().map(|(a, l)| (a, *l))
    }

    /// The letter at an address (identity if untouched).
    pub fn letter_at(&self, addr: &QubitAddress) -> PauliLetter {
        self.letters.get(addr).copied().unwrap_or(PauliLetter::I)
    }

    /// True if every touched address satisfies the predicate.
    pub fn supported_on(&self, mut pred: impl FnMut(&QubitAddress) -> bool) -> bool {
        self.letters.keys().all(|a| pred(a))
    }

    /// Rename every address through `f`, keeping letters. `f` must be
    /// injective on the support (address bijections — automorphism moves —
    /// always are); colliding images would silently merge letters.
    pub fn map_addresses(&self, mut f: impl FnMut(&QubitAddress) -> QubitAddress) -> PauliWord {
        Self::from_letters(self.letters.iter().map(|(a, l)| (f(a), *l)))
    }

    /// The adjoint `w† = (−1)^(Σ x∧z) w`: reversing each `XZ` letter costs
    /// one anticommutation.
    pub fn adjoint(&self) -> SignedWord {
        let odd = self
            .letters
            .values()
            .filter(|l| l.x && l.z)
            .count()
            % 2
            == 1;
        SignedWord {
            sign: Sign::from_parity(odd),
            word: self.clone(),
        }
    }
}

impl Mul for &PauliWord {
    type Output = SignedWord;

    /// The product `uv`, with the global sign from reordering every `Z` of
    /// `u` past the matching `X` of `v` address by address.
    fn mul(self, rhs: &PauliWord) -> SignedWord {
        let mut word = self.clone();
        let mut odd = false;
        for (addr, letter) in &rhs.letters {
            if word.letter_at(addr).z && letter.x {
                odd = !odd;
            }
            word.apply_letter(addr.clone(), *letter);
        }
        SignedWord {
            sign: Sign::from_parity(odd),
            word,
        }
    }
}

impl fmt::Display for PauliWord {
    /// Canonical text: factors in address order, `X` before `Z` at each
    /// address, joined by single spaces; the identity word is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (addr, letter) in &self.letters {
            for (present, name) in [(letter.x, "X"), (letter.z, "Z")] {
                if present {
                    if !first {
                        f.write_str(" ")?;
                    }
                    first = false;
                    write!(f, "{name}@{addr}")?;
                }
            }
        }
        Ok(())
    }
}

/// A Pauli word together with a sign, the result of word multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: PauliWord,
}

impl SignedWord {
    pub fn positive(word: PauliWord) -> Self {
        SignedWord {
            sign: Sign::Plus,
            word,
        }
    }
}

impl Mul for &SignedWord {
    type Output = SignedWord;
    fn mul(self, rhs: &SignedWord) -> SignedWord {
        let mut product = &self.word * &rhs.word;
        product.sign = product.sign * self.sign * rhs.sign;
        product
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        self.word.fmt(f)
    }
}

/// A finite linear combination of Pauli words over the exact scalar ring —
/// an element of the (quasi-local) Pauli `*`-algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<PauliWord, RadicalScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(PauliWord::identity())
    }

    pub fn from_word(word: PauliWord) -> Self {
        Self::from_term(word, RadicalScalar::one())
    }

    pub fn from_signed(sw: SignedWord) -> Self {
        Self::from_term(sw.word, sw.sign.scalar())
    }

    pub fn from_scalar(s: RadicalScalar) -> Self {
        Self::from_term(PauliWord::identity(), s)
    }

    pub fn from_term(word: PauliWord, coeff: RadicalScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn add_term(&mut self, word: PauliWord, coeff: RadicalScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(word, coefficient)` pairs in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliWord, &RadicalScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &PauliWord) -> RadicalScalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &RadicalScalar) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// The `*`-operation: adjoint words, conjugated coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let adj = w.adjoint();
            out.add_term(adj.word, adj.sign.apply(&c.conj()));
        }
        out
    }

    /// Rename every address in every word through `f` (see
    /// [`PauliWord::map_addresses`]).
    pub fn map_words(&self, f: impl Fn(&PauliWord) -> PauliWord) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let uv = u * v;
                out.add_term(uv.word, uv.sign.apply(&(a * b)));
            }
        }
        out
    }
}

impl Mul<&RadicalScalar> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &RadicalScalar) -> AlgebraElement {
        self.scale(rhs)
    }
}

macro_rules! forward_elem_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_elem_binop!(Add, add);
forward_elem_binop!(Sub, sub);
forward_elem_binop!(Mul, mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical text: terms in word order joined by ` + `; a coefficient of
    /// 1 is omitted, multi-term coefficients are parenthesised; the zero
    /// element is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if w.is_identity() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else if c.terms().count() > 1 {
                // A sum as coefficient needs parens or the element-level
                // `+` would split it.
                write!(f, "({c})*{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// A uniformly random word over `window` with support size drawn uniformly
/// from `0..=max_support` (clamped to the window size), letters uniform over
/// `{X, Z, XZ}`.
pub fn random_word<R: Rng>(
    rng: &mut R,
    window: &[QubitAddress],
    max_support: usize,
) -> Result<PauliWord, Error> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let cap = max_support.min(window.len());
    let k = rng.gen_range(0..=cap);
    // Partial Fisher–Yates: the first k slots become a uniform k-subset.
    let mut idx: Vec<usize> = (0..window.len()).collect();
    for i in 0..k {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }
    let letters = idx[..k].iter().map(|&i| {
        let letter = match rng.gen_range(0..3u8) {
            0 => PauliLetter::X,
            1 => PauliLetter::Z,
            _ => PauliLetter::XZ,
        };
        (window[i].clone(), letter)
    });
    Ok(PauliWord::from_letters(letters))
}

/// Seeded convenience form of [`random_word`].
pub fn random_word_seeded(
    window: &[QubitAddress],
    max_support: usize,
    seed: u64,
) -> Result<PauliWord, Error> {
    random_word(&mut ChaCha8Rng::seed_from_u64(seed), window, max_support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::SchmidtVector;
    use std::sync::Arc;

    fn bell() -> Arc<SchmidtVector> {
        Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap())
    }

    fn site(reg: &Arc<SchmidtVector>, party: Party, site: i64) -> QubitAddress {
        QubitAddress::catalyst(reg, party, site, 0).unwrap()
    }

    #[test]
    fn letters_anticommute_per_address() {
        let reg = bell();
        let a = site(&reg, Party::A, 0);
        let x = PauliWord::single(a.clone(), PauliLetter::X);
        let z = PauliWord::single(a.clone(), PauliLetter::Z);
        let xz = &x * &z;
        let zx = &z * &x;
        assert_eq!(xz.sign, Sign::Plus);
        assert_eq!(zx.sign, Sign::Minus);
        assert_eq!(xz.word, zx.word);
        assert_eq!(xz.word.letter_at(&a), PauliLetter::XZ);
        // X² = Z² = 1
        assert!((&x * &x).word.is_identity());
        assert!((&z * &z).word.is_identity());
        assert_eq!((&x * &x).sign, Sign::Plus);
    }

    #[test]
    fn distinct_addresses_commute() {
        let reg = bell();
        let a0 = site(&reg, Party::A, 0);
        let b1 = site(&reg, Party::B, 1);
        let u = PauliWord::single(a0, PauliLetter::Z);
        let v = PauliWord::single(b1, PauliLetter::X);
        assert_eq!(&u * &v, &v * &u);
    }

    #[test]
    fn product_signs_match_symplectic_form() {
        // (XZ)·(XZ) = XZXZ = −XXZZ = −1
        let reg = bell();
        let a = site(&reg, Party::A, 2);
        let y = PauliWord::single(a, PauliLetter::XZ);
        let sq = &y * &y;
        assert_eq!(sq.sign, Sign::Minus);
        assert!(sq.word.is_identity());
    }

    #[test]
    fn adjoint_flips_xz_letters() {
        let reg = bell();
        let a = site(&reg, Party::A, 0);
        let b = site(&reg, Party::B, 0);
        let w = PauliWord::from_letters([
            (a.clone(), PauliLetter::XZ),
            (b.clone(), PauliLetter::X),
        ]);
        let adj = w.adjoint();
        assert_eq!(adj.sign, Sign::Minus); // one XZ letter
        assert_eq!(adj.word, w);
        // w†w = +1 always: (−1)^k from the adjoint times (−1)^k from w·w
        let sq = &w * &w;
        assert_eq!(adj.sign * sq.sign, Sign::Plus);
        // and a word with two XZ letters has a positive adjoint
        let v = PauliWord::from_letters([
            (a, PauliLetter::XZ),
            (b, PauliLetter::XZ),
        ]);
        assert_eq!(v.adjoint().sign, Sign::Plus);
    }

    #[test]
    fn words_print_canonically() {
        let reg = bell();
        assert_eq!(PauliWord::identity().to_string(), "1");
        let w = PauliWord::from_letters([
            (site(&reg, Party::B, 1), PauliLetter::X),
            (site(&reg, Party::A, -2), PauliLetter::XZ),
            (QubitAddress::ancilla(0, Party::A, 0), PauliLetter::Z),
        ]);
        assert_eq!(
            w.to_string(),
            "X@A:q[1;1,1]:-2 Z@A:q[1;1,1]:-2 Z@A:t0 X@B:q[1;1,1]:1"
        );
    }

    #[test]
    fn elements_form_a_star_algebra() {
        let reg = bell();
        let a = site(&reg, Party::A, 0);
        let x = AlgebraElement::from_word(PauliWord::single(a.clone(), PauliLetter::X));
        let z = AlgebraElement::from_word(PauliWord::single(a.clone(), PauliLetter::Z));
        // (X + Z)² = 2
        let sum = &x + &z;
        let two = AlgebraElement::from_scalar(RadicalScalar::from_integer(2));
        assert_eq!(&sum * &sum, two);
        // Y = i·XZ is self-adjoint: (i·XZ)† = conj(i)·(XZ)† = (−i)(−XZ) = i·XZ
        let y = AlgebraElement::from_term(
            PauliWord::single(a, PauliLetter::XZ),
            RadicalScalar::i(),
        );
        assert_eq!(y.adjoint(), y);
        // adjoint is an anti-homomorphism
        let p = &sum * &y;
        assert_eq!(p.adjoint(), &y.adjoint() * &sum.adjoint());
    }

    #[test]
    fn element_text_is_canonical() {
        let reg = bell();
        let a = site(&reg, Party::A, 0);
        let word = PauliWord::single(a, PauliLetter::X);
        let e = AlgebraElement::from_term(word.clone(), RadicalScalar::from_integer(2))
            + AlgebraElement::from_scalar(RadicalScalar::one());
        assert_eq!(e.to_string(), "1 + 2*X@A:q[1;1,1]:0");
        assert_eq!(AlgebraElement::zero().to_string(), "0");
        let half_i = AlgebraElement::from_term(
            word,
            RadicalScalar::i().scale_rational(&crate::scalar::ratio(1, 2)),
        );
        assert_eq!(half_i.to_string(), "(0+1/2i)*X@A:q[1;1,1]:0");
    }

    #[test]
    fn random_words_are_deterministic_and_in_window() {
        let reg = bell();
        let mut window: Vec<QubitAddress> = Vec::new();
        for s in -2..=2 {
            for p in Party::BOTH {
                window.push(site(&reg, p, s));
            }
        }
        let w1 = random_word_seeded(&window, 3, 7).unwrap();
        let w2 = random_word_seeded(&window, 3, 7).unwrap();
        assert_eq!(w1, w2);
        assert!(w1.support_len() <= 3);
        assert!(w1.supported_on(|a| window.contains(a)));
        assert_eq!(
            random_word_seeded(&[], 3, 7),
            Err(Error::EmptyWindow)
        );
        // different seeds eventually differ
        let mut distinct = false;
        for seed in 0..20 {
            if random_word_seeded(&window, 3, seed).unwrap() != w1 {
                distinct = true;
                break;
            }
        }
        assert!(distinct);
    }
}
