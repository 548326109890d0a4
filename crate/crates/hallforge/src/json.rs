//! JSON file formats. Every number is carried as a decimal string
//! (rationals as `p/q`) so values of any size survive a round trip.

use hallforge_core::group::{GroupElement, GroupWord, NilpotentGroup};
use hallforge_core::magnus::{HallBasis, HallIndex};
use hallforge_core::ring::{BinomialForm, Poly, Ring, RingElement, Vars};
use hallforge_core::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// `{"r": 2, "c": 3, "coords": ["1", "0", "-2", "0", "0"]}` in Hall order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    pub coords: Vec<String>,
}

impl ElementJson {
    pub fn from_element(g: &GroupElement) -> Self {
        ElementJson {
            r: Some(g.rank()),
            c: Some(g.class()),
            coords: g.coords().iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn to_element(&self, group: &NilpotentGroup) -> CliResult<GroupElement> {
        check_shape(self.r, self.c, group)?;
        let coords = self
            .coords
            .iter()
            .map(|s| group.ring().parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(group.element(coords)?)
    }
}

fn check_shape(r: Option<usize>, c: Option<usize>, group: &NilpotentGroup) -> CliResult<()> {
    let r = r.unwrap_or(group.rank());
    let c = c.unwrap_or(group.class());
    if (r, c) != (group.rank(), group.class()) {
        return Err(CliError::Contract(format!(
            "input is for N_({},{}) but the command runs in N_({},{})",
            r,
            c,
            group.rank(),
            group.class()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterJson {
    pub weight: usize,
    pub j: usize,
    pub exponent: String,
}

/// A word `u_{w,j}^e …` with letters in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    pub letters: Vec<LetterJson>,
}

impl WordJson {
    pub fn from_word(w: &GroupWord, r: usize, c: usize) -> Self {
        WordJson {
            r: Some(r),
            c: Some(c),
            letters: w
                .letters()
                .iter()
                .map(|l| LetterJson {
                    weight: l.index.weight,
                    j: l.index.j,
                    exponent: l.exponent.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_word(&self, group: &NilpotentGroup) -> CliResult<GroupWord> {
        check_shape(self.r, self.c, group)?;
        let mut w = GroupWord::new();
        for l in &self.letters {
            let index = HallIndex::new(l.weight, l.j);
            group.position(index)?;
            w.push(index, group.ring().parse(&l.exponent)?);
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub position: usize,
    pub weight: usize,
    pub j: usize,
    pub tree: String,
}

pub fn basis_entries(basis: &HallBasis) -> Vec<BasisEntry> {
    basis
        .iter()
        .map(|b| BasisEntry {
            position: b.position,
            weight: b.index.weight,
            j: b.index.j,
            tree: basis.describe(b.position),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// Polynomials sharing one variable header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySetJson {
    pub variables: Vec<String>,
    pub polynomials: Vec<Vec<TermJson>>,
}

impl PolySetJson {
    pub fn from_polys(vars: &Vars, polys: &[Poly]) -> Self {
        PolySetJson {
            variables: vars.iter().cloned().collect(),
            polynomials: polys
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(m, q)| TermJson {
                            exps: m.clone(),
                            num: q.numer().to_string(),
                            den: q.denom().to_string(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_polys(&self) -> CliResult<Vec<Poly>> {
        let vars: Vars = self.variables.to_vec().into();
        self.polynomials
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|t| {
                        if t.exps.len() != vars.len() {
                            return Err(CliError::Input(format!(
                                "term has {} exponents for {} variables",
                                t.exps.len(),
                                vars.len()
                            )));
                        }
                        let num: BigInt = parse_big(&t.num)?;
                        let den: BigInt = parse_big(&t.den)?;
                        if den == BigInt::from(0) {
                            return Err(CliError::Input("zero denominator".into()));
                        }
                        Ok((t.exps.clone(), BigRational::new(num, den)))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Poly::from_terms(vars.clone(), parsed))
            })
            .collect()
    }
}

fn parse_big(s: &str) -> CliResult<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("not an integer: {:?}", s)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialTermJson {
    pub degrees: Vec<u32>,
    pub coeff: String,
}

/// `Σ coeff · Π binom(x_i, degrees_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialFormJson {
    pub terms: Vec<BinomialTermJson>,
}

impl BinomialFormJson {
    pub fn from_form(f: &BinomialForm) -> Self {
        BinomialFormJson {
            terms: f
                .terms()
                .map(|(d, c)| BinomialTermJson {
                    degrees: d.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_form(&self, arity: usize) -> CliResult<BinomialForm> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.degrees.clone(), parse_big(&t.coeff)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(BinomialForm::from_terms(arity, terms)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionJson {
    pub commutator: String,
    pub lie_bracket: String,
    pub magnus: String,
    pub hall_rule: String,
    pub standard_form: String,
    pub generator_commutator_sign: i64,
}

impl ConventionJson {
    pub fn current() -> Self {
        use hallforge_core::group::conventions as k;
        ConventionJson {
            commutator: k::COMMUTATOR.into(),
            lie_bracket: k::LIE_BRACKET.into(),
            magnus: k::MAGNUS.into(),
            hall_rule: k::HALL_RULE.into(),
            standard_form: k::STANDARD_FORM.into(),
            generator_commutator_sign: k::GENERATOR_COMMUTATOR_SIGN,
        }
    }
}

/// Output of `hallforge hallpoly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallPolyFile {
    pub r: usize,
    pub c: usize,
    pub convention: ConventionJson,
    pub basis: Vec<BasisEntry>,
    pub product: PolySetJson,
    pub power: PolySetJson,
    pub product_binomial: Vec<BinomialFormJson>,
    pub power_binomial: Vec<BinomialFormJson>,
}

/// Input of `hallforge deform`: for each generator `j`, the `n_c`
/// components of `f^j` in the binomial basis of `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub r: usize,
    pub c: usize,
    pub cocycles: Vec<Vec<BinomialFormJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub a: usize,
    pub b: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieConstantsJson {
    pub r: usize,
    pub c: usize,
    pub dims: Vec<usize>,
    /// Nonzero `[e_a, e_b]` for `a < b`.
    pub constants: Vec<BracketJson>,
}

pub fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn ring_strings(v: &[RingElement]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn parse_ring_strings(ring: &Ring, v: &[String]) -> CliResult<Vec<RingElement>> {
    Ok(v.iter().map(|s| ring.parse(s)).collect::<Result<_, _>>()?)
}

pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
