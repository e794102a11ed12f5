//! Text input format for rings, extensions and covers.
//!
//! ```text
//! # a scalar ring
//! [ring z12]
//! kind = modn
//! modulus = 12
//!
//! # an algebra by structure constants
//! [ring f4]
//! kind = algebra
//! base = f2
//! basis = 1, x
//! mul x x = x + 1
//!
//! [extension f2-f4]
//! source = f2
//! target = f4
//! map 1 = 1
//!
//! [cover z12-49]
//! ring = z12
//! elements = 4, 9
//! ```
//!
//! Products with the basis label `1` are implied; every other unordered
//! basis pair needs a `mul` line. Element expressions are sums of terms
//! `c`, `label` or `c*label`, with integer or `a/b` rational coefficients.
//! Errors carry 1-based line numbers.

use std::collections::HashMap;

use crate::relpic::Extension;
use crate::ring::{Ring, RingMap};
use crate::scalar::Coeff;
use crate::cech::{make_cover, Cover};
use crate::{Error, Result};

#[derive(Default, Debug)]
pub struct Document {
    pub rings: Vec<(String, Ring)>,
    pub extensions: Vec<(String, Extension)>,
    pub covers: Vec<(String, Cover)>,
}

impl Document {
    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.rings.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn extension(&self, name: &str) -> Option<&Extension> {
        self.extensions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
    }

    pub fn cover(&self, name: &str) -> Option<&Cover> {
        self.covers.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Input {
        line,
        msg: msg.into(),
    }
}

/// Parses one signed term: `c`, `label`, or `c*label`.
fn parse_term(
    term: &str,
    negative: bool,
    ring: &Ring,
    labels: &HashMap<String, usize>,
    line: usize,
) -> Result<Vec<Coeff>> {
    let term = term.trim();
    if term.is_empty() {
        return Err(err(line, "empty term in expression"));
    }
    let (coeff_str, label) = match term.split_once('*') {
        Some((c, l)) => (c.trim(), Some(l.trim())),
        None => {
            if labels.contains_key(term) {
                ("1", Some(term))
            } else {
                (term, None)
            }
        }
    };
    let base = ring.base();
    let coeff = if let Some((num, den)) = coeff_str.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad numerator `{num}`")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad denominator `{den}`")))?;
        base.from_ratio(n, d)
            .map_err(|e| err(line, e.to_string()))?
    } else {
        let v: i64 = coeff_str
            .parse()
            .map_err(|_| err(line, format!("cannot read `{coeff_str}` as a coefficient or basis label")))?;
        base.from_i64(v)
    };
    let coeff = if negative { base.neg(&coeff) } else { coeff };
    let mut out = vec![base.zero(); ring.rank()];
    match label {
        Some(l) => {
            let i = *labels
                .get(l)
                .ok_or_else(|| err(line, format!("unknown basis label `{l}`")))?;
            out[i] = coeff;
        }
        None => {
            // a bare scalar means that multiple of 1
            for (i, c) in ring.one().coords().iter().enumerate() {
                out[i] = base.mul(&coeff, c);
            }
        }
    }
    Ok(out)
}

/// Parses a linear combination of basis labels over the ring's base.
pub fn parse_element(expr: &str, ring: &Ring, line: usize) -> Result<crate::ring::RingElement> {
    let labels: HashMap<String, usize> = ring
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let base = ring.base();
    let mut acc = vec![base.zero(); ring.rank()];
    let mut term = String::new();
    let mut negative = false;
    let flush = |term: &mut String, negative: bool, acc: &mut Vec<Coeff>| -> Result<()> {
        if term.trim().is_empty() {
            if negative {
                return Err(err(line, "dangling sign in expression"));
            }
            return Ok(());
        }
        let t = parse_term(term, negative, ring, &labels, line)?;
        for (a, b) in acc.iter_mut().zip(t) {
            *a = base.add(a, &b);
        }
        term.clear();
        Ok(())
    };
    let mut first = true;
    for ch in expr.chars() {
        match ch {
            '+' => {
                flush(&mut term, negative, &mut acc)?;
                negative = false;
            }
            '-' if term.trim().is_empty() && first => {
                negative = true;
            }
            '-' => {
                flush(&mut term, negative, &mut acc)?;
                negative = true;
            }
            _ => term.push(ch),
        }
        if !ch.is_whitespace() {
            first = false;
        }
    }
    flush(&mut term, negative, &mut acc)?;
    Ok(ring.from_coords(acc))
}

enum Section {
    Ring {
        name: String,
        line: usize,
        fields: HashMap<String, (String, usize)>,
        muls: Vec<(String, String, String, usize)>,
    },
    Extension {
        name: String,
        line: usize,
        fields: HashMap<String, (String, usize)>,
        maps: Vec<(String, String, usize)>,
    },
    Cover {
        name: String,
        line: usize,
        fields: HashMap<String, (String, usize)>,
    },
}

/// Parses a whole document into validated rings, extensions and covers.
pub fn parse_document(text: &str, bound: u64) -> Result<Document> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(header) = l.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| err(line, "unterminated section header"))?;
            let mut parts = header.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let name = parts
                .next()
                .ok_or_else(|| err(line, "section header needs a name"))?
                .to_string();
            match kind {
                "ring" => sections.push(Section::Ring {
                    name,
                    line,
                    fields: HashMap::new(),
                    muls: Vec::new(),
                }),
                "extension" => sections.push(Section::Extension {
                    name,
                    line,
                    fields: HashMap::new(),
                    maps: Vec::new(),
                }),
                "cover" => sections.push(Section::Cover {
                    name,
                    line,
                    fields: HashMap::new(),
                }),
                other => return Err(err(line, format!("unknown section kind `{other}`"))),
            }
            continue;
        }
        let (key, value) = l
            .split_once('=')
            .ok_or_else(|| err(line, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim().to_string();
        let section = sections
            .last_mut()
            .ok_or_else(|| err(line, "content before any section header"))?;
        match section {
            Section::Ring { fields, muls, .. } => {
                if let Some(rest) = key.strip_prefix("mul ") {
                    let mut parts = rest.split_whitespace();
                    let (a, b) = (parts.next(), parts.next());
                    match (a, b, parts.next()) {
                        (Some(a), Some(b), None) => {
                            muls.push((a.to_string(), b.to_string(), value, line))
                        }
                        _ => return Err(err(line, "expected `mul <label> <label> = expr`")),
                    }
                } else {
                    fields.insert(key.to_string(), (value, line));
                }
            }
            Section::Extension { fields, maps, .. } => {
                if let Some(rest) = key.strip_prefix("map ") {
                    maps.push((rest.trim().to_string(), value, line));
                } else {
                    fields.insert(key.to_string(), (value, line));
                }
            }
            Section::Cover { fields, .. } => {
                fields.insert(key.to_string(), (value, line));
            }
        }
    }

    let mut doc = Document::default();
    for section in sections {
        match section {
            Section::Ring {
                name,
                line,
                fields,
                muls,
            } => {
                let ring = build_ring(&name, line, &fields, &muls, &doc)?;
                doc.rings.push((name, ring));
            }
            Section::Extension {
                name,
                line,
                fields,
                maps,
            } => {
                let get = |k: &str| -> Result<&(String, usize)> {
                    fields
                        .get(k)
                        .ok_or_else(|| err(line, format!("extension needs `{k} = ...`")))
                };
                let (src_name, src_line) = get("source")?;
                let source = doc
                    .ring(src_name)
                    .ok_or_else(|| err(*src_line, format!("unknown ring `{src_name}`")))?
                    .clone();
                let (tgt_name, tgt_line) = get("target")?;
                let target = doc
                    .ring(tgt_name)
                    .ok_or_else(|| err(*tgt_line, format!("unknown ring `{tgt_name}`")))?
                    .clone();
                let mut images = vec![None; source.rank()];
                for (label, expr, mline) in &maps {
                    let i = source
                        .labels()
                        .iter()
                        .position(|l| l == label)
                        .ok_or_else(|| {
                            err(*mline, format!("`{label}` is not a basis label of {src_name}"))
                        })?;
                    images[i] = Some(parse_element(expr, &target, *mline)?);
                }
                let images: Vec<_> = images
                    .into_iter()
                    .enumerate()
                    .map(|(i, x)| {
                        x.ok_or_else(|| {
                            err(
                                line,
                                format!("missing `map {} = ...`", source.labels()[i]),
                            )
                        })
                    })
                    .collect::<Result<_>>()?;
                let f = RingMap::new(&source, &target, images)
                    .map_err(|e| err(line, e.to_string()))?;
                let ext = Extension::new(name.clone(), f, bound)
                    .map_err(|e| err(line, e.to_string()))?;
                doc.extensions.push((name, ext));
            }
            Section::Cover { name, line, fields } => {
                let (ring_name, rline) = fields
                    .get("ring")
                    .ok_or_else(|| err(line, "cover needs `ring = ...`"))?;
                let ring = doc
                    .ring(ring_name)
                    .ok_or_else(|| err(*rline, format!("unknown ring `{ring_name}`")))?
                    .clone();
                let (elems_str, eline) = fields
                    .get("elements")
                    .ok_or_else(|| err(line, "cover needs `elements = ...`"))?;
                let elems: Vec<_> = elems_str
                    .split(',')
                    .map(|e| parse_element(e, &ring, *eline))
                    .collect::<Result<_>>()?;
                let cover =
                    make_cover(&ring, elems, bound).map_err(|e| err(*eline, e.to_string()))?;
                doc.covers.push((name, cover));
            }
        }
    }
    Ok(doc)
}

fn build_ring(
    name: &str,
    line: usize,
    fields: &HashMap<String, (String, usize)>,
    muls: &[(String, String, String, usize)],
    doc: &Document,
) -> Result<Ring> {
    let kind = fields
        .get("kind")
        .map(|(v, _)| v.as_str())
        .ok_or_else(|| err(line, "ring needs `kind = ...`"))?;
    match kind {
        "modn" => {
            let (v, vline) = fields
                .get("modulus")
                .ok_or_else(|| err(line, "modn ring needs `modulus = n`"))?;
            let n: u64 = v.parse().map_err(|_| err(*vline, "bad modulus"))?;
            Ring::integers_mod(n).map_err(|e| err(*vline, e.to_string()))
        }
        "primefield" => {
            let (v, vline) = fields
                .get("char")
                .ok_or_else(|| err(line, "prime field needs `char = p`"))?;
            let p: u64 = v.parse().map_err(|_| err(*vline, "bad characteristic"))?;
            Ring::prime_field(p).map_err(|e| err(*vline, e.to_string()))
        }
        "rationals" => Ok(Ring::rationals()),
        "algebra" => {
            let (base_name, bline) = fields
                .get("base")
                .ok_or_else(|| err(line, "algebra needs `base = <ring>`"))?;
            let base = doc
                .ring(base_name)
                .ok_or_else(|| err(*bline, format!("unknown ring `{base_name}`")))?
                .clone();
            let (basis_str, _) = fields
                .get("basis")
                .ok_or_else(|| err(line, "algebra needs `basis = a, b, ...`"))?;
            let labels: Vec<String> = basis_str
                .split(',')
                .map(|l| l.trim().to_string())
                .collect();
            let rank = labels.len();
            let index: HashMap<String, usize> = labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect();

            let one_coords: Vec<Coeff> = match fields.get("unit") {
                Some((expr, uline)) => {
                    parse_expr_coords(expr, &base, &labels, &index, None, *uline)?
                }
                None => {
                    let i = *index.get("1").ok_or_else(|| {
                        err(line, "algebra needs `unit = ...` or a basis label `1`")
                    })?;
                    let mut v = vec![base.base().zero(); rank];
                    v[i] = base.base().one();
                    v
                }
            };

            let mut table: Vec<Option<Vec<Coeff>>> = vec![None; rank * rank];
            // products with 1 are implied when the unit is the basis label `1`
            let unit_label = index.get("1").copied();
            if let Some(u) = unit_label {
                let is_unit_vec = {
                    let mut v = vec![base.base().zero(); rank];
                    v[u] = base.base().one();
                    v == one_coords
                };
                if is_unit_vec {
                    for j in 0..rank {
                        let mut v = vec![base.base().zero(); rank];
                        v[j] = base.base().one();
                        table[u * rank + j] = Some(v.clone());
                        table[j * rank + u] = Some(v);
                    }
                }
            }
            for (a, b, expr, mline) in muls {
                let i = *index
                    .get(a)
                    .ok_or_else(|| err(*mline, format!("unknown basis label `{a}`")))?;
                let j = *index
                    .get(b)
                    .ok_or_else(|| err(*mline, format!("unknown basis label `{b}`")))?;
                let coords =
                    parse_expr_coords(expr, &base, &labels, &index, Some(&one_coords), *mline)?;
                table[i * rank + j] = Some(coords.clone());
                table[j * rank + i] = Some(coords);
            }
            let table: Vec<Vec<Coeff>> = table
                .into_iter()
                .enumerate()
                .map(|(k, t)| {
                    t.ok_or_else(|| {
                        err(
                            line,
                            format!(
                                "missing `mul {} {} = ...`",
                                labels[k / rank],
                                labels[k % rank]
                            ),
                        )
                    })
                })
                .collect::<Result<_>>()?;
            Ring::algebra(name, &base, labels, table, one_coords)
                .map_err(|e| err(line, e.to_string()))
        }
        other => Err(err(line, format!("unknown ring kind `{other}`"))),
    }
}

/// Parses an expression into raw coordinates over `base` against a label
/// list (used while the algebra itself does not exist yet).
fn parse_expr_coords(
    expr: &str,
    base: &Ring,
    labels: &[String],
    index: &HashMap<String, usize>,
    unit_fallback: Option<&[Coeff]>,
    line: usize,
) -> Result<Vec<Coeff>> {
    // reuse parse_element on a throwaway commutative shell with free-ish
    // diagonal table; only labels and base matter for parsing
    let b = base.base();
    let rank = labels.len();
    let mut acc = vec![b.zero(); rank];
    let mut term = String::new();
    let mut negative = false;
    let mut items: Vec<(String, bool)> = Vec::new();
    let mut first = true;
    for ch in expr.chars() {
        match ch {
            '+' => {
                items.push((term.clone(), negative));
                term.clear();
                negative = false;
            }
            '-' if term.trim().is_empty() && first => negative = true,
            '-' => {
                items.push((term.clone(), negative));
                term.clear();
                negative = true;
            }
            _ => term.push(ch),
        }
        if !ch.is_whitespace() {
            first = false;
        }
    }
    items.push((term, negative));
    for (t, neg) in items {
        let t = t.trim();
        if t.is_empty() {
            continue;
        }
        let (coeff_str, label) = match t.split_once('*') {
            Some((c, l)) => (c.trim(), Some(l.trim())),
            None => {
                if index.contains_key(t) {
                    ("1", Some(t))
                } else {
                    (t, None)
                }
            }
        };
        let coeff = if let Some((num, den)) = coeff_str.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| err(line, "bad numerator"))?;
            let d: i64 = den.trim().parse().map_err(|_| err(line, "bad denominator"))?;
            b.from_ratio(n, d).map_err(|e| err(line, e.to_string()))?
        } else {
            let v: i64 = coeff_str
                .parse()
                .map_err(|_| err(line, format!("cannot read `{coeff_str}`")))?;
            b.from_i64(v)
        };
        let coeff = if neg { b.neg(&coeff) } else { coeff };
        match label {
            Some(l) => {
                let i = *index
                    .get(l)
                    .ok_or_else(|| err(line, format!("unknown basis label `{l}`")))?;
                acc[i] = b.add(&acc[i], &coeff);
            }
            None => {
                // bare scalars are multiples of the ring identity
                if b.is_zero(&coeff) {
                    continue;
                }
                if let Some(i) = index.get("1") {
                    acc[*i] = b.add(&acc[*i], &coeff);
                } else if let Some(unit) = unit_fallback {
                    for (a, u) in acc.iter_mut().zip(unit) {
                        *a = b.add(a, &b.mul(&coeff, u));
                    }
                } else {
                    return Err(err(
                        line,
                        "bare scalar needs a basis label `1` or a declared unit",
                    ));
                }
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"
# test document
[ring f2]
kind = primefield
char = 2

[ring f4]
kind = algebra
base = f2
basis = 1, x
mul x x = x + 1

[extension f2-f4]
source = f2
target = f4
map 1 = 1

[cover z6-23]
ring = z6
elements = 2, 3

[ring z6]
kind = modn
modulus = 6
"#;

    #[test]
    fn parses_rings_extensions_and_covers() {
        // note: the cover references z6 which is declared later; reorder
        let reordered = DOC.replace(
            "[cover z6-23]\nring = z6\nelements = 2, 3\n\n[ring z6]\nkind = modn\nmodulus = 6",
            "[ring z6]\nkind = modn\nmodulus = 6\n\n[cover z6-23]\nring = z6\nelements = 2, 3",
        );
        let doc = parse_document(&reordered, 1_000_000).unwrap();
        assert_eq!(doc.rings.len(), 3);
        let f4 = doc.ring("f4").unwrap();
        assert_eq!(f4.rank(), 2);
        let x = f4.basis(1);
        assert_eq!(&x * &x, &x + &f4.one());
        assert!(doc.extension("f2-f4").is_some());
        assert!(doc.cover("z6-23").is_some());
    }

    #[test]
    fn forward_reference_is_an_error() {
        let e = parse_document(DOC, 1_000_000).unwrap_err();
        match e {
            Error::Input { msg, .. } => assert!(msg.contains("unknown ring"), "{msg}"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected_with_triple() {
        let doc = r#"
[ring f2]
kind = primefield
char = 2

[ring bad]
kind = algebra
base = f2
basis = 1, x, y
mul x x = y
mul x y = 1
mul y y = 0
"#;
        let e = parse_document(doc, 1_000_000).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("associativity"), "{msg}");
    }

    #[test]
    fn non_injective_extension_is_rejected() {
        let doc = r#"
[ring z6]
kind = modn
modulus = 6

[ring f3]
kind = primefield
char = 3

[extension bad]
source = z6
target = f3
map 1 = 1
"#;
        let e = parse_document(doc, 1_000_000).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("faithful"), "{msg}");
    }

    #[test]
    fn missing_mul_line_is_reported() {
        let doc = r#"
[ring f2]
kind = primefield
char = 2

[ring incomplete]
kind = algebra
base = f2
basis = 1, x, y
mul x x = 0
"#;
        let e = parse_document(doc, 1_000_000).unwrap_err();
        assert!(e.to_string().contains("missing `mul"), "{e}");
    }

    #[test]
    fn rational_coefficients_in_expressions() {
        let q = Ring::rationals();
        let half = parse_element("1/2 + 1/2", &q, 1).unwrap();
        assert!(half.is_one());
        let neg = parse_element("-3", &q, 1).unwrap();
        assert_eq!(neg, q.from_i64(-3));
    }

    #[test]
    fn cover_validation_failure_has_line_number() {
        let doc = r#"
[ring z12]
kind = modn
modulus = 12

[cover bad]
ring = z12
elements = 2, 4
"#;
        let e = parse_document(doc, 1_000_000).unwrap_err();
        match e {
            Error::Input { line, msg } => {
                assert_eq!(line, 8);
                assert!(msg.contains("unit ideal"));
            }
            other => panic!("unexpected {other}"),
        }
    }
}
