//! The named example catalog: the extensions, covers and excision
//! configurations every verification suite runs over. The entries live in
//! an embedded document in the text input format, so loading the catalog
//! also exercises the parser.

use crate::input::{parse_document, parse_element, Document};
use crate::relpic::Extension;
use crate::ring::{Ring, RingElement};
use crate::cech::Cover;
use crate::{Error, Result};

const CATALOG_TEXT: &str = include_str!("catalog.txt");

/// A named excision setup: an extension plus generators (in its source) of
/// an ideal shared with the target.
pub struct ExcisionConfig {
    pub name: String,
    pub extension: String,
    pub ideal_gens: Vec<RingElement>,
}

pub struct Catalog {
    pub doc: Document,
    pub excision_configs: Vec<ExcisionConfig>,
}

impl Catalog {
    pub fn builtin(bound: u64) -> Result<Catalog> {
        let doc = parse_document(CATALOG_TEXT, bound)?;
        let mut excision_configs = Vec::new();
        {
            let conductor = doc
                .extension("conductor-f2")
                .ok_or_else(|| Error::Other("catalog misses conductor-f2".into()))?;
            excision_configs.push(ExcisionConfig {
                name: "conductor-eps".into(),
                extension: "conductor-f2".into(),
                ideal_gens: vec![parse_element("e", conductor.a(), 0)?],
            });
            let cusp = doc
                .extension("cusp-f2")
                .ok_or_else(|| Error::Other("catalog misses cusp-f2".into()))?;
            excision_configs.push(ExcisionConfig {
                name: "cusp-square".into(),
                extension: "cusp-f2".into(),
                ideal_gens: vec![parse_element("e", cusp.a(), 0)?],
            });
            excision_configs.push(ExcisionConfig {
                name: "zero-ideal".into(),
                extension: "dual-f2".into(),
                ideal_gens: vec![],
            });
        }
        Ok(Catalog {
            doc,
            excision_configs,
        })
    }

    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.doc.ring(name)
    }

    pub fn extension(&self, name: &str) -> Option<&Extension> {
        self.doc.extension(name)
    }

    pub fn cover(&self, name: &str) -> Option<&Cover> {
        self.doc.cover(name)
    }

    pub fn extensions(&self) -> impl Iterator<Item = (&str, &Extension)> {
        self.doc.extensions.iter().map(|(n, e)| (n.as_str(), e))
    }

    /// Extensions whose rings are finite (enumerable).
    pub fn finite_extensions(&self) -> impl Iterator<Item = (&str, &Extension)> {
        self.extensions()
            .filter(|(_, e)| e.b().size().is_some())
    }

    pub fn covers(&self) -> impl Iterator<Item = (&str, &Cover)> {
        self.doc.covers.iter().map(|(n, c)| (n.as_str(), c))
    }

    /// Loads extra definitions from a user document, appending them to the
    /// catalog (user names shadow nothing; lookups scan built-ins first).
    pub fn extend_with(&mut self, text: &str, bound: u64) -> Result<()> {
        let doc = parse_document(text, bound)?;
        self.doc.rings.extend(doc.rings);
        self.doc.extensions.extend(doc.extensions);
        self.doc.covers.extend(doc.covers);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbGroup;
    use crate::relpic::{npic_group, pic_group, NuValue};

    #[test]
    fn builtin_catalog_loads() {
        let c = Catalog::builtin(1_000_000).unwrap();
        assert!(c.extension("dual-f2").is_some());
        assert!(c.extension("cusp-f2").is_some());
        assert!(c.cover("z12-49").is_some());
        assert_eq!(c.excision_configs.len(), 3);
        // at least six finite extensions for the sequence suite
        assert!(c.finite_extensions().count() >= 6);
    }

    #[test]
    fn catalog_values_spot_checks() {
        let c = Catalog::builtin(1_000_000).unwrap();
        // F2 in F4: Pic(f) of order 3
        let e = c.extension("quad-f2").unwrap();
        assert_eq!(pic_group(e, 1_000_000).unwrap().invariants, vec![3]);
        // dual numbers over F2 at D = 3
        let e = c.extension("dual-f2").unwrap();
        assert_eq!(
            npic_group(e, 3, 1_000_000).unwrap(),
            NuValue::Group(AbGroup::from_invariants(vec![2, 2, 2]))
        );
        // the split extension has reduced target: trivial NPic
        let e = c.extension("split-f2").unwrap();
        assert_eq!(
            npic_group(e, 4, 1_000_000).unwrap(),
            NuValue::Group(AbGroup::trivial())
        );
        // mixed-f3 has 48 units upstairs, 2 downstairs
        let e = c.extension("mixed-f3").unwrap();
        assert_eq!(pic_group(e, 1_000_000).unwrap().order(), Some(24));
    }

    #[test]
    fn user_documents_extend_the_catalog() {
        let mut c = Catalog::builtin(1_000_000).unwrap();
        c.extend_with(
            "[ring z9]\nkind = modn\nmodulus = 9\n\n[extension id-z9]\nsource = z9\ntarget = z9\nmap 1 = 1\n",
            1_000_000,
        )
        .unwrap();
        assert!(c.ring("z9").is_some());
        assert!(c.extension("id-z9").is_some());
    }
}
