//! TOML structure files: parsing into checked structures and serializing
//! structures back.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::One;
use serde::{Deserialize, Serialize};

use stgeom::acm::complete_phi;
use stgeom::rational::{self, to_string};
use stgeom::{AcmStructure, Error, HermitianStructure, KForm, LieAlgebra, Matrix, Metric, Rational, Vector};

use crate::failure::Failure;

/// A rational literal: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn of(q: &Rational) -> Self {
        Scalar::Text(to_string(q))
    }

    fn value(&self, at: &str) -> Result<Rational, Failure> {
        match self {
            Scalar::Int(k) => Ok(Rational::from_integer((*k).into())),
            Scalar::Text(s) => rational::parse(s)
                .ok_or_else(|| Failure::parse(format!("{at}: `{s}` is not a rational literal"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(String),
    Matrix(Vec<Vec<Scalar>>),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Named(String),
    Components(Vec<Scalar>),
}

/// `[coeff, "ea", "eb"]`: the term `coeff·e^a∧e^b`.
pub type Term = (Scalar, String, String);

/// `["ei", coeff, "ej"]`: `e^i∘φ` contains `coeff·e^j`.
pub type PhiEntry = (String, Scalar, String);

/// On-disk layout. Without `xi` the file describes a Hermitian structure
/// and `phi` is the table of `J`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default = "orthonormal")]
    pub metric: MetricSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<VectorSpec>,
    #[serde(default)]
    pub phi: Vec<PhiEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub d: BTreeMap<String, Vec<Term>>,
}

fn orthonormal() -> MetricSpec {
    MetricSpec::Named("orthonormal".into())
}

/// A 2-form file: `terms = [[coeff, "ea", "eb"], ...]`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub enum Structure {
    Acm(AcmStructure),
    Hermitian(HermitianStructure),
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub name: Option<String>,
    pub labels: Option<Vec<String>>,
    pub structure: Structure,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read file: {e}")))
}

fn from_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    toml::from_str(text).map_err(|e| Failure::parse(e.to_string().trim_end().to_string()))
}

pub fn parse_path(path: &Path) -> Result<Parsed, Failure> {
    parse_str(&read(path)?)
}

pub fn parse_str(text: &str) -> Result<Parsed, Failure> {
    from_toml::<StructureFile>(text)?.build()
}

pub fn parse_form_path(path: &Path, dim: usize) -> Result<KForm, Failure> {
    let file: FormFile = from_toml(&read(path)?)?;
    if let Some(d) = file.dim {
        if d != dim {
            return Err(Failure::from(Error::DimensionMismatch(dim, d)).context("dim"));
        }
    }
    two_form(dim, &file.terms, "terms")
}

/// 0-based index of `e<k>` (or `E<k>` when `upper` is allowed).
fn index(name: &str, n: usize, at: &str, upper: bool) -> Result<usize, Failure> {
    let digits = name
        .strip_prefix('e')
        .or_else(|| upper.then(|| name.strip_prefix('E')).flatten())
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
    let Some(k) = digits.and_then(|d| d.parse::<usize>().ok()) else {
        return Err(Failure::parse(format!("{at}: `{name}` is not a basis name e1..e{n}")));
    };
    if k == 0 || k > n {
        return Err(Failure::from(Error::IndexOutOfRange { index: k, dim: n }).context(at));
    }
    Ok(k - 1)
}

fn two_form(n: usize, terms: &[Term], at: &str) -> Result<KForm, Failure> {
    let mut f = KForm::zero(n, 2);
    for (t, (c, a, b)) in terms.iter().enumerate() {
        let at = format!("{at}[{t}]");
        let c = c.value(&at)?;
        let (a, b) = (index(a, n, &at, false)?, index(b, n, &at, false)?);
        if a == b {
            return Err(Failure::parse(format!("{at}: repeated index e{}", a + 1)));
        }
        f = &f + &KForm::monomial(n, &[a, b], c);
    }
    Ok(f)
}

impl StructureFile {
    pub fn build(&self) -> Result<Parsed, Failure> {
        let n = self.dim;
        if n == 0 || n > 64 {
            return Err(Failure::parse(format!("dim: {n} is not in 1..=64")));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Failure::from(Error::DimensionMismatch(n, labels.len())).context("labels"));
            }
        }
        let mut d = vec![KForm::zero(n, 2); n];
        for (key, terms) in &self.d {
            let i = index(key, n, "d", false)?;
            d[i] = two_form(n, terms, &format!("d.{key}"))?;
        }
        let algebra = LieAlgebra::checked(d).map_err(|e| Failure::from(e).context("d"))?;
        let metric = match &self.metric {
            MetricSpec::Named(s) if s == "orthonormal" => Metric::identity(n),
            MetricSpec::Named(s) => {
                return Err(Failure::parse(format!("metric: expected \"orthonormal\" or a matrix, got `{s}`")))
            }
            MetricSpec::Matrix(rows) => {
                if rows.len() != n {
                    return Err(Failure::from(Error::DimensionMismatch(n, rows.len())).context("metric"));
                }
                let mut entries = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n {
                        return Err(Failure::from(Error::DimensionMismatch(n, row.len()))
                            .context(&format!("metric[{i}]")));
                    }
                    entries.push(
                        row.iter()
                            .enumerate()
                            .map(|(j, x)| x.value(&format!("metric[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                let gram = Matrix::from_rows(entries).map_err(|e| Failure::from(e).context("metric"))?;
                Metric::new(gram).map_err(|e| Failure::from(e).context("metric"))?
            }
        };
        let xi = match &self.xi {
            None => None,
            Some(VectorSpec::Named(s)) => Some(Vector::basis(n, index(s, n, "xi", true)?)),
            Some(VectorSpec::Components(xs)) => {
                if xs.len() != n {
                    return Err(Failure::from(Error::DimensionMismatch(n, xs.len())).context("xi"));
                }
                Some(Vector(
                    xs.iter()
                        .enumerate()
                        .map(|(i, x)| x.value(&format!("xi[{i}]")))
                        .collect::<Result<_, _>>()?,
                ))
            }
        };
        let mut table = Vec::with_capacity(self.phi.len());
        for (t, (a, c, b)) in self.phi.iter().enumerate() {
            let at = format!("phi[{t}]");
            table.push((index(a, n, &at, false)?, c.value(&at)?, index(b, n, &at, false)?));
        }
        let zero = Vector::zero(n);
        let phi = complete_phi(&metric, xi.as_ref().unwrap_or(&zero), &table)
            .map_err(|e| Failure::from(e).context("phi"))?;
        let structure = match xi {
            Some(xi) => Structure::Acm(AcmStructure::new(algebra, metric, xi, phi)?),
            None => Structure::Hermitian(HermitianStructure::new(algebra, metric, phi)?),
        };
        Ok(Parsed {
            name: self.name.clone(),
            labels: self.labels.clone(),
            structure,
        })
    }

    pub fn from_acm(s: &AcmStructure, name: Option<&str>) -> Self {
        let n = s.dim();
        let xi = s.xi();
        let xi = match xi.support().collect::<Vec<_>>()[..] {
            [(k, c)] if c.is_one() => VectorSpec::Named(format!("E{}", k + 1)),
            _ => VectorSpec::Components(xi.0.iter().map(Scalar::of).collect()),
        };
        StructureFile {
            xi: Some(xi),
            ..Self::common(n, s.algebra(), s.metric(), s.phi(), name)
        }
    }

    fn common(n: usize, l: &LieAlgebra, g: &Metric, phi: &Matrix, name: Option<&str>) -> Self {
        let e = |i: usize| format!("e{}", i + 1);
        let mut d = BTreeMap::new();
        for (i, de) in l.differentials().iter().enumerate() {
            if de.is_zero() {
                continue;
            }
            let mut terms: Vec<(Vec<usize>, &Rational)> =
                de.terms().map(|(m, c)| (m.indices().collect(), c)).collect();
            terms.sort();
            let terms = terms
                .into_iter()
                .map(|(ix, c)| (Scalar::of(c), e(ix[0]), e(ix[1])))
                .collect();
            d.insert(e(i), terms);
        }
        let metric = if g.is_identity() {
            orthonormal()
        } else {
            MetricSpec::Matrix(
                (0..n)
                    .map(|i| (0..n).map(|j| Scalar::of(g.g(i, j))).collect())
                    .collect(),
            )
        };
        let mut table = Vec::new();
        for i in 0..n {
            let row = phi.row(i);
            if row.is_zero() {
                table.push((e(i), Scalar::Text("0".into()), e(i)));
            }
            for (j, c) in row.support() {
                table.push((e(i), Scalar::of(c), e(j)));
            }
        }
        StructureFile {
            dim: n,
            name: name.map(str::to_string),
            labels: None,
            metric,
            xi: None,
            phi: table,
            d,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("structure files serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SU2: &str = r#"
dim = 3
xi = "E3"
phi = [["e1", "1", "e2"]]

[d]
e1 = [["-2", "e2", "e3"]]
e2 = [[2, "e1", "e3"]]
e3 = [["-2", "e1", "e2"]]
"#;

    fn acm(text: &str) -> AcmStructure {
        match parse_str(text).unwrap().structure {
            Structure::Acm(s) => s,
            Structure::Hermitian(_) => panic!("expected an almost contact structure"),
        }
    }

    #[test]
    fn integer_and_string_coefficients() {
        let s = acm(SU2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.algebra().de(1).coeff_of(&[0, 2]), Rational::from_integer(2.into()));
    }

    #[test]
    fn names_are_checked() {
        assert!(index("e0", 3, "x", false).is_err());
        assert!(index("E2", 3, "x", false).is_err());
        assert_eq!(index("E2", 3, "x", true).unwrap(), 1);
        let e = index("e9", 7, "d.e1[0]", false).unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.message.starts_with("d.e1[0]: "), "{}", e.message);
    }

    #[test]
    fn hermitian_without_xi() {
        let text = "dim = 2\nphi = [[\"e1\", \"1\", \"e2\"]]\n";
        assert!(matches!(parse_str(text).unwrap().structure, Structure::Hermitian(_)));
    }

    #[test]
    fn unknown_fields_rejected() {
        let e = parse_str("dim = 3\nxi = \"E3\"\ncolour = 1\n").unwrap_err();
        assert_eq!(e.code, 2);
    }

    #[test]
    fn serialized_text_round_trips() {
        let s = acm(SU2);
        let text = StructureFile::from_acm(&s, Some("su2")).to_toml();
        let back = parse_str(&text).unwrap();
        assert_eq!(back.name.as_deref(), Some("su2"));
        let Structure::Acm(t) = back.structure else { panic!() };
        assert_eq!(t.algebra(), s.algebra());
        assert_eq!(t.phi(), s.phi());
    }
}
