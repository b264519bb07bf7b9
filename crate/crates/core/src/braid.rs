//! Braid groups as the hom-sets of the free braided strict monoidal category
//! on one object.
//!
//! Objects are natural numbers, `B(n, n)` is the braid group on `n` strands
//! and the tensor product places braids side by side. Words are read left to
//! right in the order the crossings happen, so `compose(w1, w2)` is the word
//! of `w2` followed by the word of `w1`.
//!
//! Equality is decided exactly through the Artin action of `B_n` on the free
//! group `F_n`, which is faithful.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Strand cap for words coming from the command line.
pub const CLI_MAX_STRANDS: usize = 16;

/// Default window `|k| <= K` for the symmetry candidates.
pub const DEFAULT_K: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator {letter} is out of range on {strands} strands")]
    Index { letter: i32, strands: usize },
    #[error("strand mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("{strands} strands exceeds the cap of {cap}")]
    TooManyStrands { strands: usize, cap: usize },
    #[error("candidate exponent {k} is outside the window |k| <= {bound}")]
    OutOfWindow { k: i64, bound: u32 },
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWord {
    n: usize,
    word: Vec<i32>,
}

/// A word in the Artin generators: `i` is `σ_i`, `-i` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct BraidWord {
    n: usize,
    word: Vec<i32>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawWord) -> Result<Self, BraidError> {
        BraidWord::new(raw.n, raw.word)
    }
}

impl BraidWord {
    pub fn new(n: usize, word: Vec<i32>) -> Result<Self, BraidError> {
        for &letter in &word {
            let i = letter.unsigned_abs() as usize;
            if letter == 0 || i >= n {
                return Err(BraidError::Index { letter, strands: n });
            }
        }
        Ok(BraidWord { n, word })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, word: Vec::new() }
    }

    /// `σ_i` on `n` strands.
    pub fn generator(n: usize, i: i32) -> Result<Self, BraidError> {
        BraidWord::new(n, vec![i])
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, word: self.word.iter().rev().map(|l| -l).collect() }
    }

    /// `self` composed with itself `k` times; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut word = Vec::with_capacity(base.word.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            word.extend_from_slice(&base.word);
        }
        BraidWord { n: self.n, word }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.iter().map(|l| l.signum() as i64).sum()
    }

    /// Where each strand ends up: `perm[p]` is the final position of the
    /// strand starting at `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.n).collect();
        for &letter in &self.word {
            let i = letter.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.n];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Images of the free generators `x_1..x_n` under the Artin action, as
    /// reduced words over `±1..=±n`.
    pub fn artin_action(&self) -> Vec<Vec<i32>> {
        let mut images: Vec<Vec<i32>> = (1..=self.n as i32).map(|j| vec![j]).collect();
        for &letter in &self.word {
            let i = letter.unsigned_abs() as usize - 1;
            let xi = images[i].clone();
            let xj = images[i + 1].clone();
            if letter > 0 {
                // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
                images[i] = free_product(&[&xi, &xj, &free_inverse(&xi)]);
                images[i + 1] = xi;
            } else {
                // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
                images[i] = xj.clone();
                images[i + 1] = free_product(&[&free_inverse(&xj), &xi, &xj]);
            }
        }
        images
    }

    /// Shorthand `n:1,-3`, or the JSON object form.
    pub fn parse(s: &str) -> Result<Self, BraidError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| BraidError::Parse(e.to_string()));
        }
        let (n, rest) = s.split_once(':').ok_or_else(|| BraidError::Parse(format!("expected n:letters, got `{s}`")))?;
        let n: usize = n.trim().parse().map_err(|_| BraidError::Parse(format!("bad strand count `{n}`")))?;
        let mut word = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            word.push(part.parse().map_err(|_| BraidError::Parse(format!("bad letter `{part}`")))?);
        }
        BraidWord::new(n, word)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("braid words serialize")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id_{}", self.n);
        }
        let letters: Vec<String> =
            self.word.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{} on {}", letters.join(" "), self.n)
    }
}

fn free_inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

fn free_product(parts: &[&[i32]]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for part in parts {
        for &l in part.iter() {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
    }
    out
}

/// Free reduction of a word in any group letters.
pub fn free_reduce(w: &[i32]) -> Vec<i32> {
    free_product(&[w])
}

pub fn is_reduced(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}

/// `w2` then `w1`.
pub fn compose(w1: &BraidWord, w2: &BraidWord) -> Result<BraidWord, BraidError> {
    if w1.n != w2.n {
        return Err(BraidError::StrandMismatch { left: w1.n, right: w2.n });
    }
    let mut word = w2.word.clone();
    word.extend_from_slice(&w1.word);
    Ok(BraidWord { n: w1.n, word })
}

/// Side by side, `w1` on the left.
pub fn tensor(w1: &BraidWord, w2: &BraidWord) -> BraidWord {
    let shift = w1.n as i32;
    let mut word = w1.word.clone();
    word.extend(w2.word.iter().map(|&l| l + l.signum() * shift));
    BraidWord { n: w1.n + w2.n, word }
}

/// The block crossing `m + n -> n + m`: each of the first `m` strands
/// crosses over each of the last `n`.
pub fn gamma(m: usize, n: usize) -> BraidWord {
    let mut word = Vec::with_capacity(m * n);
    for j in (1..=m).rev() {
        for i in j..j + n {
            word.push(i as i32);
        }
    }
    BraidWord { n: m + n, word }
}

/// Why two words differ, cheapest invariant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distinction {
    ExponentSum,
    Permutation,
    ArtinAction,
}

impl fmt::Display for Distinction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distinction::ExponentSum => "exponent sum",
            Distinction::Permutation => "permutation",
            Distinction::ArtinAction => "Artin action",
        })
    }
}

/// `None` if the words are the same braid, otherwise the first invariant
/// that separates them.
pub fn distinguish(w1: &BraidWord, w2: &BraidWord) -> Result<Option<Distinction>, BraidError> {
    if w1.n != w2.n {
        return Err(BraidError::StrandMismatch { left: w1.n, right: w2.n });
    }
    if w1.exponent_sum() != w2.exponent_sum() {
        return Ok(Some(Distinction::ExponentSum));
    }
    if w1.permutation() != w2.permutation() {
        return Ok(Some(Distinction::Permutation));
    }
    if w1.artin_action() != w2.artin_action() {
        return Ok(Some(Distinction::ArtinAction));
    }
    Ok(None)
}

pub fn equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    Ok(distinguish(w1, w2)?.is_none())
}

/// Two words claimed different, with the invariant telling them apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub left: BraidWord,
    pub right: BraidWord,
    pub distinguished_by: Distinction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Symmetry,
    Naturality,
}

/// Outcome for the candidate symmetry `γ_{1,1}^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    pub k: i64,
    pub candidate: BraidWord,
    pub is_symmetry: bool,
    pub failed_axiom: Option<Axiom>,
    pub witness: Option<Inequality>,
}

/// Is `γ_{1,1}^k` a symmetry? The only natural endomorphisms of the
/// braiding on `1 ⊗ 1` are these powers, so none being a symmetry means the
/// category admits no symmetry.
pub fn is_symmetry_candidate(k: i64, bound: u32) -> Result<SymmetryVerdict, BraidError> {
    if k.unsigned_abs() > bound as u64 {
        return Err(BraidError::OutOfWindow { k, bound });
    }
    let candidate = gamma(1, 1).power(k);
    let (axiom, left, right) = if k != 0 {
        // the swap composed with itself must be the identity
        (Axiom::Symmetry, compose(&candidate, &candidate)?, BraidWord::identity(2))
    } else {
        // a trivial swap on 1 ⊗ 1 forces trivial swaps everywhere, and then
        // naturality at f = σ1, g = id_2 asks for f ⊗ g = g ⊗ f
        let f = gamma(1, 1);
        let g = BraidWord::identity(2);
        (Axiom::Naturality, tensor(&f, &g), tensor(&g, &f))
    };
    let witness = distinguish(&left, &right)?.map(|d| Inequality { left, right, distinguished_by: d });
    Ok(SymmetryVerdict {
        k,
        candidate,
        is_symmetry: witness.is_none(),
        failed_axiom: witness.as_ref().map(|_| axiom),
        witness,
    })
}

/// Verdicts for every `|k| <= bound`, from `-bound` upwards.
pub fn symmetry_candidates(bound: u32) -> Vec<SymmetryVerdict> {
    let b = bound as i64;
    (-b..=b).map(|k| is_symmetry_candidate(k, bound).expect("inside the window")).collect()
}

/// A random word on `n` strands with length at most `max_len`.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n);
    }
    let len = rng.gen_range(0..=max_len);
    let word = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord { n, word }
}

/// One family of braided-monoidal identities, checked on many instances.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<Inequality>,
}

impl AxiomCheck {
    fn new(name: &str) -> Self {
        AxiomCheck { name: name.to_string(), instances: 0, failures: Vec::new() }
    }

    fn expect_equal(&mut self, left: BraidWord, right: BraidWord) {
        self.instances += 1;
        if let Some(d) = distinguish(&left, &right).expect("same strand count by construction") {
            self.failures.push(Inequality { left, right, distinguished_by: d });
        }
    }
}

/// Naturality, both hexagons, Yang–Baxter and tensor functoriality: all
/// block sizes up to 3 exhaustively, then `sample_size` random instances
/// with up to 5 strands and words of length up to 10.
pub fn check_braiding_axioms<R: Rng>(rng: &mut R, sample_size: usize) -> Vec<AxiomCheck> {
    let mut naturality = AxiomCheck::new("naturality");
    let mut hexagon_left = AxiomCheck::new("hexagon gamma(m+n,p)");
    let mut hexagon_right = AxiomCheck::new("hexagon gamma(m,n+p)");
    let mut yang_baxter = AxiomCheck::new("yang-baxter");
    let mut functoriality = AxiomCheck::new("tensor functoriality");

    let hexagons = |hl: &mut AxiomCheck, hr: &mut AxiomCheck, m: usize, n: usize, p: usize| {
        let id = BraidWord::identity;
        hl.expect_equal(
            gamma(m + n, p),
            compose(&tensor(&gamma(m, p), &id(n)), &tensor(&id(m), &gamma(n, p))).expect("m+n+p strands"),
        );
        hr.expect_equal(
            gamma(m, n + p),
            compose(&tensor(&id(n), &gamma(m, p)), &tensor(&gamma(m, n), &id(p))).expect("m+n+p strands"),
        );
    };
    let natural = |check: &mut AxiomCheck, f: &BraidWord, g: &BraidWord| {
        let (m, n) = (f.n, g.n);
        check.expect_equal(
            compose(&gamma(m, n), &tensor(f, g)).expect("m+n strands"),
            compose(&tensor(g, f), &gamma(m, n)).expect("m+n strands"),
        );
    };

    for m in 1..=3 {
        for n in 1..=3 {
            for p in 1..=3 {
                hexagons(&mut hexagon_left, &mut hexagon_right, m, n, p);
            }
            let f = random_word(rng, m, 6);
            let g = random_word(rng, n, 6);
            natural(&mut naturality, &f, &g);
        }
    }
    natural(&mut naturality, &gamma(1, 1), &BraidWord::identity(0));
    for n in 3..=5 {
        for i in 1..n as i32 - 1 {
            let w = |l: Vec<i32>| BraidWord::new(n, l).expect("in range");
            yang_baxter.expect_equal(w(vec![i, i + 1, i]), w(vec![i + 1, i, i + 1]));
        }
    }

    for _ in 0..sample_size {
        let m = rng.gen_range(0..=3);
        let n = rng.gen_range(0..=5 - m);
        let f = random_word(rng, m, 10);
        let g = random_word(rng, n, 10);
        natural(&mut naturality, &f, &g);

        // the all-empty hexagon is trivial, so redraw it
        let (a, b, c) = loop {
            let abc = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
            if abc != (0, 0, 0) {
                break abc;
            }
        };
        hexagons(&mut hexagon_left, &mut hexagon_right, a, b, c);

        let f2 = random_word(rng, m, 10);
        let g2 = random_word(rng, n, 10);
        functoriality.expect_equal(
            tensor(&compose(&f, &f2).expect("m strands"), &compose(&g, &g2).expect("n strands")),
            compose(&tensor(&f, &g), &tensor(&f2, &g2)).expect("m+n strands"),
        );

        // Yang–Baxter conjugated by a random braid
        let k = rng.gen_range(3..=5);
        let i = rng.gen_range(1..k as i32 - 1);
        let h = random_word(rng, k, 10);
        let conj = |l: Vec<i32>| {
            let mid = BraidWord::new(k, l).expect("in range");
            compose(&h.inverse(), &compose(&mid, &h).expect("k strands")).expect("k strands")
        };
        yang_baxter.expect_equal(conj(vec![i, i + 1, i]), conj(vec![i + 1, i, i + 1]));
    }

    vec![naturality, hexagon_left, hexagon_right, yang_baxter, functoriality]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn word_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        (2..=max_n).prop_flat_map(move |n| {
            prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
                .prop_map(move |ls| w(n, &ls.iter().map(|&(i, s)| if s { i } else { -i }).collect::<Vec<_>>()))
        })
    }

    #[test]
    fn validation() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(1, vec![1]).is_err());
        assert!(BraidWord::new(0, vec![]).is_ok());
        let json: Result<BraidWord, _> = serde_json::from_str(r#"{"n":2,"word":[3]}"#);
        assert!(json.is_err());
        let ok: BraidWord = serde_json::from_str(r#"{"n":4,"word":[1,-3]}"#).unwrap();
        assert_eq!(ok.to_json(), r#"{"n":4,"word":[1,-3]}"#);
        assert_eq!(BraidWord::parse("4:1,-3").unwrap(), ok);
        assert_eq!(BraidWord::parse("3:").unwrap(), BraidWord::identity(3));
        assert!(BraidWord::parse("x").is_err());
    }

    #[test]
    fn composition_and_tensor() {
        let s = gamma(1, 1);
        assert_eq!(compose(&s, &s).unwrap(), w(2, &[1, 1]));
        assert_eq!(compose(&s, &BraidWord::identity(2)).unwrap(), s);
        assert!(compose(&s, &BraidWord::identity(3)).is_err());
        assert_eq!(tensor(&s, &s), w(4, &[1, 3]));
        assert_eq!(tensor(&s, &BraidWord::identity(0)), s);
    }

    #[test]
    fn gamma_shapes() {
        assert_eq!(gamma(1, 1), w(2, &[1]));
        assert_eq!(gamma(0, 3), BraidWord::identity(3));
        let g = gamma(2, 1);
        assert_eq!(g.strands(), 3);
        assert_eq!(g.exponent_sum(), 2);
        assert_eq!(g.permutation(), vec![1, 2, 0]);
        for m in 0..4 {
            for n in 0..4 {
                let g = gamma(m, n);
                assert!(g.letters().iter().all(|&l| l > 0));
                assert_eq!(g.exponent_sum(), (m * n) as i64);
                let expected: Vec<usize> = (0..m).map(|p| p + n).chain(0..n).collect();
                assert_eq!(g.permutation(), expected);
            }
        }
    }

    #[test]
    fn equality_examples() {
        assert!(equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
        assert!(!equal(&w(2, &[1, 1]), &BraidWord::identity(2)).unwrap());
        assert!(equal(&w(2, &[1, -1]), &BraidWord::identity(2)).unwrap());
        assert!(equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!equal(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
        // same permutation and exponent sum, different braids
        assert_eq!(distinguish(&w(3, &[1, 1, 2, -2]), &w(3, &[2, 2, 1, -1])).unwrap(), Some(Distinction::ArtinAction));
        assert!(equal(&w(2, &[]), &w(3, &[])).is_err());
    }

    #[test]
    fn symmetry_candidates_all_fail() {
        let all = symmetry_candidates(DEFAULT_K);
        assert_eq!(all.len(), 11);
        for v in &all {
            assert!(!v.is_symmetry);
            let witness = v.witness.as_ref().unwrap();
            if v.k == 0 {
                assert_eq!(v.failed_axiom, Some(Axiom::Naturality));
                assert_eq!(witness.left, w(4, &[1]));
                assert_eq!(witness.right, w(4, &[3]));
                assert_eq!(witness.distinguished_by, Distinction::Permutation);
            } else {
                assert_eq!(v.failed_axiom, Some(Axiom::Symmetry));
                assert_eq!(witness.left.exponent_sum(), 2 * v.k);
                assert_eq!(witness.distinguished_by, Distinction::ExponentSum);
            }
        }
        assert!(is_symmetry_candidate(6, 5).is_err());
    }

    #[test]
    fn braided_monoidal_identities_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for check in check_braiding_axioms(&mut rng, 200) {
            assert!(check.instances > 0, "{}", check.name);
            assert!(check.failures.is_empty(), "{}: {:?}", check.name, check.failures);
        }
    }

    proptest! {
        #[test]
        fn action_is_functorial(a in word_strategy(4, 8), b in word_strategy(4, 8)) {
            prop_assume!(a.strands() == b.strands());
            let ab = compose(&a, &b).unwrap();
            let (fa, fb) = (a.artin_action(), b.artin_action());
            // substituting b's images into a's action
            let sub: Vec<Vec<i32>> = fa
                .iter()
                .map(|img| {
                    let parts: Vec<Vec<i32>> = img
                        .iter()
                        .map(|&l| {
                            let x = fb[l.unsigned_abs() as usize - 1].clone();
                            if l > 0 { x } else { free_inverse(&x) }
                        })
                        .collect();
                    let refs: Vec<&[i32]> = parts.iter().map(Vec::as_slice).collect();
                    free_product(&refs)
                })
                .collect();
            prop_assert_eq!(ab.artin_action(), sub);
            for img in ab.artin_action() {
                prop_assert!(is_reduced(&img));
            }
        }

        #[test]
        fn invariants_follow_equality(a in word_strategy(4, 8)) {
            let shuffled = compose(&compose(&a, &a.inverse()).unwrap(), &a).unwrap();
            prop_assert!(equal(&a, &shuffled).unwrap());
            prop_assert_eq!(a.exponent_sum(), shuffled.exponent_sum());
            prop_assert_eq!(a.permutation(), shuffled.permutation());
            prop_assert!(equal(&compose(&a, &a.inverse()).unwrap(), &BraidWord::identity(a.strands())).unwrap());
        }

        #[test]
        fn tensor_permutation_is_block_sum(a in word_strategy(4, 6), b in word_strategy(4, 6)) {
            let t = tensor(&a, &b);
            let mut expected = a.permutation();
            expected.extend(b.permutation().iter().map(|p| p + a.strands()));
            prop_assert_eq!(t.permutation(), expected);
        }
    }
}
