//! Letters, words and the ordered PBW monomials `x1^n1 x2^n2 x3^n3 e^{m x1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the five generating letters. `EPlus`/`EMinus` stand for
/// `e^{x1}`/`e^{-x1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X1,
    X2,
    X3,
    EPlus,
    EMinus,
}

pub type Word = Vec<Generator>;

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::X1,
        Generator::X2,
        Generator::X3,
        Generator::EPlus,
        Generator::EMinus,
    ];

    /// Position in the PBW order `x1 < x2 < x3 < e^{±x1}`; the two
    /// exponentials share a rank.
    pub fn rank(self) -> u8 {
        match self {
            Generator::X1 => 0,
            Generator::X2 => 1,
            Generator::X3 => 2,
            Generator::EPlus | Generator::EMinus => 3,
        }
    }

    pub fn is_exponential(self) -> bool {
        matches!(self, Generator::EPlus | Generator::EMinus)
    }
}

/// Display names for the five letters, used by printers and the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub names: [&'static str; 5],
}

impl Alphabet {
    pub const X: Alphabet = Alphabet {
        names: ["x1", "x2", "x3", "e+", "e-"],
    };
    pub const XI: Alphabet = Alphabet {
        names: ["xi1", "xi2", "xi3", "E+", "E-"],
    };

    pub fn name(&self, g: Generator) -> &'static str {
        self.names[g as usize]
    }
}

/// Ordered basis monomial `x1^{n1} x2^{n2} x3^{n3} e^{m x1}`; negative `m`
/// means `(e^{-x1})^{-m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwMonomial {
    pub n1: u32,
    pub n2: u32,
    pub n3: u32,
    pub m: i32,
}

impl PbwMonomial {
    pub const UNIT: PbwMonomial = PbwMonomial::new(0, 0, 0, 0);

    pub const fn new(n1: u32, n2: u32, n3: u32, m: i32) -> Self {
        PbwMonomial { n1, n2, n3, m }
    }

    pub fn of(g: Generator) -> Self {
        match g {
            Generator::X1 => Self::new(1, 0, 0, 0),
            Generator::X2 => Self::new(0, 1, 0, 0),
            Generator::X3 => Self::new(0, 0, 1, 0),
            Generator::EPlus => Self::new(0, 0, 0, 1),
            Generator::EMinus => Self::new(0, 0, 0, -1),
        }
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    /// Number of letters in the ordered word.
    pub fn degree(&self) -> u32 {
        self.n1 + self.n2 + self.n3 + self.m.unsigned_abs()
    }

    pub fn word(&self) -> Word {
        let mut w = Vec::with_capacity(self.degree() as usize);
        w.extend(std::iter::repeat_n(Generator::X1, self.n1 as usize));
        w.extend(std::iter::repeat_n(Generator::X2, self.n2 as usize));
        w.extend(std::iter::repeat_n(Generator::X3, self.n3 as usize));
        let e = if self.m >= 0 { Generator::EPlus } else { Generator::EMinus };
        w.extend(std::iter::repeat_n(e, self.m.unsigned_abs() as usize));
        w
    }

    /// The monomial spelled by an irreducible word, or `None` if the word is
    /// out of order or mixes `e^{x1}` with `e^{-x1}`.
    pub fn from_ordered_word(word: &[Generator]) -> Option<Self> {
        let mut mono = Self::UNIT;
        let mut last_rank = 0u8;
        let mut last_exp: Option<Generator> = None;
        for &g in word {
            if g.rank() < last_rank {
                return None;
            }
            last_rank = g.rank();
            match g {
                Generator::X1 => mono.n1 += 1,
                Generator::X2 => mono.n2 += 1,
                Generator::X3 => mono.n3 += 1,
                Generator::EPlus | Generator::EMinus => {
                    if last_exp.is_some_and(|prev| prev != g) {
                        return None;
                    }
                    last_exp = Some(g);
                    mono.m += if g == Generator::EPlus { 1 } else { -1 };
                }
            }
        }
        Some(mono)
    }

    /// Commutative product: exponents add.
    pub fn classical_mul(&self, other: &Self) -> Self {
        Self::new(
            self.n1 + other.n1,
            self.n2 + other.n2,
            self.n3 + other.n3,
            self.m + other.m,
        )
    }

    /// Value of the commutative monomial at `(x1, x2, x3)`.
    pub fn evaluate(&self, x: [f64; 3]) -> f64 {
        x[0].powi(self.n1 as i32)
            * x[1].powi(self.n2 as i32)
            * x[2].powi(self.n3 as i32)
            * (self.m as f64 * x[0]).exp()
    }

    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        let mut push = |g: Generator, k: u32| match k {
            0 => {}
            1 => parts.push(alphabet.name(g).to_string()),
            _ => parts.push(format!("{}^{k}", alphabet.name(g))),
        };
        push(Generator::X1, self.n1);
        push(Generator::X2, self.n2);
        push(Generator::X3, self.n3);
        if self.m >= 0 {
            push(Generator::EPlus, self.m as u32);
        } else {
            push(Generator::EMinus, self.m.unsigned_abs());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Alphabet::X))
    }
}

/// Termination measure of a word: (number of `x2`/`x3` letters, length,
/// inversions with respect to the PBW order). Every rewrite step decreases it
/// lexicographically.
pub fn termination_measure(word: &[Generator]) -> (usize, usize, usize) {
    let middle = word
        .iter()
        .filter(|g| matches!(g, Generator::X2 | Generator::X3))
        .count();
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i].rank() > word[j].rank() {
                inversions += 1;
            }
        }
    }
    (middle, word.len(), inversions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn word_round_trip() {
        let m = PbwMonomial::new(2, 1, 0, -3);
        assert_eq!(m.word(), vec![X1, X1, X2, EMinus, EMinus, EMinus]);
        assert_eq!(PbwMonomial::from_ordered_word(&m.word()), Some(m));
    }

    #[test]
    fn out_of_order_words_are_not_monomials() {
        assert_eq!(PbwMonomial::from_ordered_word(&[X2, X1]), None);
        assert_eq!(PbwMonomial::from_ordered_word(&[EPlus, EMinus]), None);
        assert_eq!(PbwMonomial::from_ordered_word(&[EPlus, X3]), None);
        assert_eq!(PbwMonomial::from_ordered_word(&[]), Some(PbwMonomial::UNIT));
    }

    #[test]
    fn classical_product_adds_exponents() {
        let a = PbwMonomial::new(1, 1, 0, 0);
        let b = PbwMonomial::new(0, 0, 0, 2);
        assert_eq!(a.classical_mul(&b), PbwMonomial::new(1, 1, 0, 2));
        assert_eq!(
            PbwMonomial::of(EPlus).classical_mul(&PbwMonomial::of(EMinus)),
            PbwMonomial::UNIT
        );
    }

    #[test]
    fn display() {
        assert_eq!(PbwMonomial::new(1, 2, 0, -1).to_string(), "x1*x2^2*e-");
        assert_eq!(PbwMonomial::UNIT.to_string(), "1");
        assert_eq!(PbwMonomial::new(0, 0, 1, 2).display_with(&Alphabet::XI), "xi3*E+^2");
    }

    #[test]
    fn measure() {
        assert_eq!(termination_measure(&[X3, X2, X1]), (2, 3, 3));
        assert_eq!(termination_measure(&[EPlus, EMinus]), (0, 2, 0));
    }
}
