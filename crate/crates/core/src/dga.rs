//! Differential graded algebras generated by Reeb chords.
//!
//! A [`Dga`] is a free noncommutative algebra over the Laurent ring of its
//! torus variables. Coefficients are central and have zero differential; the
//! differential on words follows the graded Leibniz rule
//! `∂(vw) = (∂v)w + (-1)^{|v|} v(∂w)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{is_identifier, LaurentPolynomial, Ring};
use crate::scalar::Scalar;

const UNKNOT_DOCUMENT: &str = include_str!("../data/unknot.dga.json");
const ELIM_SYNTHETIC_DOCUMENT: &str = include_str!("../data/elim_synthetic.dga.json");

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// Ordered product of generators, stored as indices into the owning DGA's
/// generator list. The empty word is the unit.
pub type Word = Vec<usize>;

/// Ground-ring linear combination of words, kept in canonical form: equal
/// words merged, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    ring: Ring,
    terms: BTreeMap<Word, LaurentPolynomial>,
}

impl AlgebraElement {
    pub fn zero(ring: &Ring) -> Self {
        AlgebraElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::term(LaurentPolynomial::one(ring), Vec::new())
    }

    pub fn generator(ring: &Ring, index: usize) -> Self {
        Self::term(LaurentPolynomial::one(ring), vec![index])
    }

    pub fn coefficient(c: LaurentPolynomial) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(c: LaurentPolynomial, word: Word) -> Self {
        let mut e = Self::zero(&c.ring().clone());
        e.add_term(word, c);
        e
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPolynomial)> {
        self.terms.iter()
    }

    /// The coefficient of the empty word.
    pub fn scalar_part(&self) -> LaurentPolynomial {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| LaurentPolynomial::zero(&self.ring))
    }

    fn add_term(&mut self, word: Word, c: LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(word)
            .or_insert_with(|| LaurentPolynomial::zero(&c.ring().clone()));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPolynomial::constant(
            &self.ring,
            Scalar::from_int(-1),
        )))
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(&self.ring);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Noncommutative product: words concatenate, coefficients multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}

/// Result of checking `∂² = 0` generator by generator.
#[derive(Clone, Debug)]
pub struct DSquaredReport {
    /// `(generator name, ∂²g)` for every generator, in declaration order.
    pub entries: Vec<(String, AlgebraElement)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, e)| e.is_zero())
    }

    /// Generators whose `∂²` is nonzero.
    pub fn failures(&self) -> impl Iterator<Item = &(String, AlgebraElement)> {
        self.entries.iter().filter(|(_, e)| !e.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct Dga {
    name: String,
    ring: Ring,
    generators: Vec<Generator>,
    differential: Vec<AlgebraElement>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgaDocument {
    name: String,
    torus_variables: Vec<String>,
    generators: Vec<Generator>,
    #[serde(default)]
    differential: BTreeMap<String, Vec<TermDocument>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDocument {
    coefficient: String,
    word: Vec<String>,
}

fn dga_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Dga {
        location: location.into(),
        message: message.into(),
    }
}

impl Dga {
    /// Parses and validates a DGA document (UTF-8 JSON).
    pub fn load(document: &str) -> Result<Self> {
        let doc: DgaDocument = serde_json::from_str(document).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let ring = Ring::new(&doc.torus_variables)
            .map_err(|e| dga_err("torus_variables", e.to_string()))?;

        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, g) in doc.generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(dga_err(
                    format!("generators[{i}].name"),
                    format!("`{}` is not a valid generator name", g.name),
                ));
            }
            if ring.contains(&g.name) {
                return Err(dga_err(
                    format!("generators[{i}].name"),
                    format!("`{}` clashes with a torus variable", g.name),
                ));
            }
            if index.insert(&g.name, i).is_some() {
                return Err(dga_err(
                    format!("generators[{i}].name"),
                    format!("duplicate generator name `{}`", g.name),
                ));
            }
        }

        let mut differential = vec![AlgebraElement::zero(&ring); doc.generators.len()];
        for (gname, terms) in &doc.differential {
            let gi = *index.get(gname.as_str()).ok_or_else(|| {
                dga_err(
                    format!("differential.{gname}"),
                    format!("differential given for undeclared generator `{gname}`"),
                )
            })?;
            let target = doc.generators[gi].degree - 1;
            let mut elem = AlgebraElement::zero(&ring);
            for (ti, t) in terms.iter().enumerate() {
                let loc = format!("differential.{gname}[{ti}]");
                let coef = LaurentPolynomial::parse(&t.coefficient, &ring).map_err(|e| match e {
                    Error::Parse { location, message } => {
                        dga_err(format!("{loc}.coefficient {location}"), message)
                    }
                    other => dga_err(format!("{loc}.coefficient"), other.to_string()),
                })?;
                let mut word = Vec::with_capacity(t.word.len());
                let mut degree = 0;
                for (wi, name) in t.word.iter().enumerate() {
                    let i = *index.get(name.as_str()).ok_or_else(|| {
                        dga_err(
                            format!("{loc}.word[{wi}]"),
                            format!("undeclared generator `{name}`"),
                        )
                    })?;
                    degree += doc.generators[i].degree;
                    word.push(i);
                }
                if degree != target {
                    return Err(dga_err(
                        format!("{loc}.word"),
                        format!(
                            "word has degree {degree}, but ∂{gname} must have degree {target}"
                        ),
                    ));
                }
                elem = elem.add(&AlgebraElement::term(coef, word));
            }
            differential[gi] = elem;
        }

        Ok(Dga {
            name: doc.name,
            ring,
            generators: doc.generators,
            differential,
        })
    }

    /// The conormal-torus DGA of the unknot: `|c| = 1`, `|e| = 2`,
    /// `∂c = 1 - X - P + Q*X*P`, `∂e = c - c = 0`.
    pub fn unknot() -> Self {
        Self::load(UNKNOT_DOCUMENT).expect("bundled unknot document is valid")
    }

    /// Degree-0 elimination example: `∂a = u*u - X`, `∂b = u - P`.
    pub fn elim_synthetic() -> Self {
        Self::load(ELIM_SYNTHETIC_DOCUMENT).expect("bundled synthetic document is valid")
    }

    /// Serializes back to the document format.
    pub fn to_document(&self) -> String {
        let doc = DgaDocument {
            name: self.name.clone(),
            torus_variables: self.ring.vars().to_vec(),
            generators: self.generators.clone(),
            differential: self
                .generators
                .iter()
                .zip(&self.differential)
                .filter(|(_, d)| !d.is_zero())
                .map(|(g, d)| {
                    let terms = d
                        .terms()
                        .map(|(w, c)| TermDocument {
                            coefficient: c.to_string(),
                            word: w.iter().map(|&i| self.generators[i].name.clone()).collect(),
                        })
                        .collect();
                    (g.name.clone(), terms)
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| dga_err(name, format!("no generator named `{name}`")))
    }

    pub fn degree(&self, index: usize) -> i64 {
        self.generators[index].degree
    }

    pub fn word_degree(&self, word: &[usize]) -> i64 {
        word.iter().map(|&i| self.degree(i)).sum()
    }

    /// `∂` of a generator as stored.
    pub fn differential_of(&self, index: usize) -> &AlgebraElement {
        &self.differential[index]
    }

    pub fn generator_element(&self, name: &str) -> Result<AlgebraElement> {
        Ok(AlgebraElement::generator(&self.ring, self.generator_index(name)?))
    }

    /// Returns a copy with `∂(name)` replaced, re-checking degrees.
    pub fn with_differential(&self, name: &str, value: AlgebraElement) -> Result<Dga> {
        let gi = self.generator_index(name)?;
        if value.ring() != &self.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: value.ring().to_string(),
            });
        }
        let target = self.degree(gi) - 1;
        for (w, _) in value.terms() {
            if w.iter().any(|&i| i >= self.generators.len()) {
                return Err(dga_err(format!("differential.{name}"), "unknown generator index"));
            }
            if self.word_degree(w) != target {
                return Err(dga_err(
                    format!("differential.{name}"),
                    format!("word degree {} ≠ {target}", self.word_degree(w)),
                ));
            }
        }
        let mut out = self.clone();
        out.differential[gi] = value;
        Ok(out)
    }

    /// Extends `∂` to `elem` by linearity over the ground ring and the graded
    /// Leibniz rule.
    pub fn apply_differential(&self, elem: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ring);
        for (word, coef) in elem.terms() {
            let mut sign_degree = 0i64;
            for pos in 0..word.len() {
                let g = word[pos];
                let dg = &self.differential[g];
                if !dg.is_zero() {
                    let prefix = AlgebraElement::term(coef.clone(), word[..pos].to_vec());
                    let suffix = AlgebraElement::term(
                        LaurentPolynomial::one(&self.ring),
                        word[pos + 1..].to_vec(),
                    );
                    let mut piece = prefix.mul(dg).mul(&suffix);
                    if sign_degree.rem_euclid(2) == 1 {
                        piece = piece.scale(&LaurentPolynomial::constant(
                            &self.ring,
                            Scalar::from_int(-1),
                        ));
                    }
                    out = out.add(&piece);
                }
                sign_degree += self.degree(g);
            }
        }
        out
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let entries = self
            .generators
            .iter()
            .zip(&self.differential)
            .map(|(g, d)| (g.name.clone(), self.apply_differential(d)))
            .collect();
        DSquaredReport { entries }
    }

    /// Renders an element with this DGA's generator names, e.g.
    /// `-X + u*u` or `(1 - X)*c*e`.
    pub fn format(&self, elem: &AlgebraElement) -> String {
        if elem.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Word, &LaurentPolynomial)> = elem.terms().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let word: Vec<&str> = w.iter().map(|&i| self.generators[i].name.as_str()).collect();
            let word = word.join("*");
            let cs = c.to_string();
            let (neg, body) = if w.is_empty() {
                match cs.strip_prefix('-') {
                    Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                    _ => (false, cs),
                }
            } else if cs == "1" {
                (false, word)
            } else if cs == "-1" {
                (true, word)
            } else if c.num_terms() == 1 {
                match cs.strip_prefix('-') {
                    Some(rest) => (true, format!("{rest}*{word}")),
                    None => (false, format!("{cs}*{word}")),
                }
            } else {
                (false, format!("({cs})*{word}"))
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DGA {} over [{}]", self.name, self.ring)?;
        for (g, d) in self.generators.iter().zip(&self.differential) {
            writeln!(f, "  |{}| = {}   ∂{} = {}", g.name, g.degree, g.name, self.format(d))?;
        }
        Ok(())
    }
}

pub fn load_dga(document: &str) -> Result<Dga> {
    Dga::load(document)
}

pub fn apply_differential(d: &Dga, elem: &AlgebraElement) -> AlgebraElement {
    d.apply_differential(elem)
}

pub fn check_d_squared(d: &Dga) -> DSquaredReport {
    d.check_d_squared()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(d: &Dga, s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, d.ring()).unwrap()
    }

    #[test]
    fn unknot_loads_with_expected_degrees() {
        let d = Dga::unknot();
        assert_eq!(d.generators().len(), 2);
        assert_eq!(d.generators()[0], Generator { name: "c".into(), degree: 1 });
        assert_eq!(d.generators()[1], Generator { name: "e".into(), degree: 2 });
    }

    #[test]
    fn unknot_differentials() {
        let d = Dga::unknot();
        let c = d.generator_element("c").unwrap();
        let e = d.generator_element("e").unwrap();
        let dc = d.apply_differential(&c);
        assert_eq!(d.format(&dc), "1 - X - P + Q*X*P");
        assert!(d.apply_differential(&e).is_zero());
        let dce = d.apply_differential(&c.mul(&e));
        assert_eq!(dce, dc.mul(&e));
        assert!(d.apply_differential(&AlgebraElement::unit(d.ring())).is_zero());
    }

    #[test]
    fn d_squared_reports() {
        assert!(Dga::unknot().check_d_squared().passed());
        assert!(Dga::elim_synthetic().check_d_squared().passed());

        let d = Dga::unknot();
        let c = d.generator_element("c").unwrap();
        let bad = d.with_differential("e", c).unwrap();
        let report = bad.check_d_squared();
        assert!(!report.passed());
        let (name, witness) = report.failures().next().unwrap();
        assert_eq!(name, "e");
        assert_eq!(witness.scalar_part(), lp(&d, "1 - X - P + Q*X*P"));
    }

    #[test]
    fn synthetic_formats() {
        let d = Dga::elim_synthetic();
        let a = d.generator_index("a").unwrap();
        let b = d.generator_index("b").unwrap();
        assert_eq!(d.format(d.differential_of(a)), "-X + u*u");
        assert_eq!(d.format(d.differential_of(b)), "-P + u");
    }

    #[test]
    fn rejects_duplicate_names() {
        let doc = r#"{"name":"bad","torus_variables":["X"],
            "generators":[{"name":"c","degree":1},{"name":"c","degree":2}]}"#;
        match Dga::load(doc) {
            Err(Error::Dga { location, message }) => {
                assert_eq!(location, "generators[1].name");
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_undeclared_and_misgraded_words() {
        let undeclared = r#"{"name":"bad","torus_variables":["X"],
            "generators":[{"name":"a","degree":1}],
            "differential":{"a":[{"coefficient":"1","word":["z"]}]}}"#;
        assert!(matches!(
            Dga::load(undeclared),
            Err(Error::Dga { ref location, .. }) if location == "differential.a[0].word[0]"
        ));
        let misgraded = r#"{"name":"bad","torus_variables":["X"],
            "generators":[{"name":"a","degree":1},{"name":"b","degree":1}],
            "differential":{"a":[{"coefficient":"X","word":["b"]}]}}"#;
        assert!(matches!(
            Dga::load(misgraded),
            Err(Error::Dga { ref location, .. }) if location == "differential.a[0].word"
        ));
        let bad_coef = r#"{"name":"bad","torus_variables":["X"],
            "generators":[{"name":"a","degree":1}],
            "differential":{"a":[{"coefficient":"1 + Y","word":[]}]}}"#;
        assert!(matches!(
            Dga::load(bad_coef),
            Err(Error::Dga { ref location, .. }) if location.starts_with("differential.a[0].coefficient column")
        ));
        assert!(matches!(Dga::load("{not json"), Err(Error::Parse { .. })));
    }

    #[test]
    fn graded_leibniz_sign() {
        // |x| = 1 with ∂x = X, |y| = 1 with ∂y = P:
        // ∂(xy) = X y - P x, words printed in index order
        let doc = r#"{"name":"signs","torus_variables":["X","P"],
            "generators":[{"name":"x","degree":1},{"name":"y","degree":1}],
            "differential":{"x":[{"coefficient":"X","word":[]}],
                            "y":[{"coefficient":"P","word":[]}]}}"#;
        let d = Dga::load(doc).unwrap();
        let x = d.generator_element("x").unwrap();
        let y = d.generator_element("y").unwrap();
        assert_eq!(d.format(&d.apply_differential(&x.mul(&y))), "-P*x + X*y");
    }

    #[test]
    fn document_round_trip() {
        let d = Dga::elim_synthetic();
        let again = Dga::load(&d.to_document()).unwrap();
        assert_eq!(d.to_string(), again.to_string());
    }
}
