//! Catalog of known functions with their per-dialect spellings.
//!
//! The table lives in `data/functions.csv` (embedded at compile time), one
//! row per function with columns `canonical,arity,root,numexpr,python`. An
//! empty cell means the function has no spelling in that dialect: numexpr
//! for instance has no two-argument `power`, `min` or `max`. Each canonical
//! name is bound to a pure scalar implementation here, which the evaluator
//! uses as the reference semantics.
//!
//! Functions absent from the table are not an error anywhere in the
//! pipeline: plain-name calls pass through verbatim, namespaced calls pass
//! through to the root target only.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::dialect::Dialect;

const TABLE_CSV: &str = include_str!("../data/functions.csv");
const TABLE_HEADER: &str = "canonical,arity,root,numexpr,python";

/// One function known to the translator.
pub struct FunctionDescriptor {
    pub canonical: String,
    pub arity: usize,
    pub root_spelling: String,
    pub numexpr_spelling: Option<String>,
    pub python_spelling: Option<String>,
    /// Reference scalar semantics; takes exactly `arity` arguments.
    pub semantics: fn(&[f64]) -> f64,
}

impl FunctionDescriptor {
    /// The spelling of this function in `target`, or `None` when the
    /// dialect has no form for it.
    pub fn spelling(&self, target: Dialect) -> Option<&str> {
        match target {
            Dialect::Root => Some(&self.root_spelling),
            Dialect::Numexpr => self.numexpr_spelling.as_deref(),
            Dialect::Python => self.python_spelling.as_deref(),
        }
    }
}

impl fmt::Debug for FunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionDescriptor")
            .field("canonical", &self.canonical)
            .field("arity", &self.arity)
            .field("root_spelling", &self.root_spelling)
            .field("numexpr_spelling", &self.numexpr_spelling)
            .field("python_spelling", &self.python_spelling)
            .finish()
    }
}

/// Immutable lookup structure over the descriptor table; built once on
/// first use and safe for concurrent reads.
pub struct Registry {
    descriptors: Vec<FunctionDescriptor>,
    by_root: HashMap<String, usize>,
    by_numexpr: HashMap<String, usize>,
    by_canonical: HashMap<String, usize>,
}

impl Registry {
    pub fn global() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry::from_csv(TABLE_CSV))
    }

    /// Parse a `canonical,arity,root,numexpr,python` table. Panics on a
    /// malformed table, which can only happen if the embedded data file is
    /// edited inconsistently; the schema test covers every rule checked
    /// here.
    fn from_csv(text: &str) -> Registry {
        let mut lines = text.lines();
        let header = lines.next().expect("function table is empty");
        assert_eq!(header, TABLE_HEADER, "unexpected function table header");
        let mut descriptors = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(
                fields.len(),
                5,
                "function table row {} has {} fields, wanted 5",
                i + 2,
                fields.len()
            );
            let canonical = fields[0].to_string();
            let arity: usize = fields[1]
                .parse()
                .unwrap_or_else(|_| panic!("bad arity {:?} for {canonical}", fields[1]));
            let semantics = semantics_for(&canonical)
                .unwrap_or_else(|| panic!("no semantics registered for {canonical:?}"));
            let opt = |s: &str| {
                if s.is_empty() {
                    None
                } else {
                    Some(s.to_string())
                }
            };
            descriptors.push(FunctionDescriptor {
                canonical,
                arity,
                root_spelling: fields[2].to_string(),
                numexpr_spelling: opt(fields[3]),
                python_spelling: opt(fields[4]),
                semantics,
            });
        }
        let mut by_root = HashMap::new();
        let mut by_numexpr = HashMap::new();
        let mut by_canonical = HashMap::new();
        for (i, d) in descriptors.iter().enumerate() {
            let dup = by_canonical.insert(d.canonical.clone(), i).is_some()
                || by_root.insert(d.root_spelling.clone(), i).is_some();
            assert!(!dup, "duplicate table entry for {}", d.canonical);
            if let Some(n) = &d.numexpr_spelling {
                assert!(
                    by_numexpr.insert(n.clone(), i).is_none(),
                    "duplicate numexpr spelling {n}"
                );
            }
        }
        Registry {
            descriptors,
            by_root,
            by_numexpr,
            by_canonical,
        }
    }

    pub fn descriptors(&self) -> &[FunctionDescriptor] {
        &self.descriptors
    }

    /// Find the descriptor whose source-dialect spelling matches a parsed
    /// call. Root spellings are namespace-qualified (`TMath::Sqrt`), so a
    /// plain `sqrt(x)` in root input does NOT match; numexpr spellings are
    /// plain names and never carry a namespace. `None` means the call is
    /// unknown, which is not an error: unknown calls stay verbatim.
    pub fn lookup_source(
        &self,
        spelling: &str,
        namespace: Option<&str>,
        source: Dialect,
    ) -> Option<&FunctionDescriptor> {
        let idx = match source {
            Dialect::Root => match namespace {
                Some(ns) => self.by_root.get(&format!("{ns}::{spelling}")),
                None => self.by_root.get(spelling),
            },
            Dialect::Numexpr => match namespace {
                Some(_) => None,
                None => self.by_numexpr.get(spelling),
            },
            Dialect::Python => None,
        }?;
        Some(&self.descriptors[*idx])
    }

    /// Resolution used by the evaluator: namespaced calls go through the
    /// root spellings, plain calls through numexpr spellings and then
    /// canonical names (covering `power`/`min`/`max`, which numexpr lacks).
    pub fn resolve_for_eval(
        &self,
        namespace: Option<&str>,
        name: &str,
    ) -> Option<&FunctionDescriptor> {
        match namespace {
            Some(_) => self.lookup_source(name, namespace, Dialect::Root),
            None => self
                .lookup_source(name, None, Dialect::Numexpr)
                .or_else(|| self.by_canonical.get(name).map(|i| &self.descriptors[*i])),
        }
    }
}

/// Render the target-dialect spelling of a descriptor; `None` means the
/// target has no form for this function and the emitter must report it.
pub fn render(desc: &FunctionDescriptor, target: Dialect) -> Option<&str> {
    desc.spelling(target)
}

fn semantics_for(canonical: &str) -> Option<fn(&[f64]) -> f64> {
    Some(match canonical {
        "sqrt" => |a: &[f64]| a[0].sqrt(),
        "abs" => |a: &[f64]| a[0].abs(),
        "sin" => |a: &[f64]| a[0].sin(),
        "cos" => |a: &[f64]| a[0].cos(),
        "tan" => |a: &[f64]| a[0].tan(),
        "asin" => |a: &[f64]| a[0].asin(),
        "acos" => |a: &[f64]| a[0].acos(),
        "atan" => |a: &[f64]| a[0].atan(),
        "atan2" => |a: &[f64]| a[0].atan2(a[1]),
        "sinh" => |a: &[f64]| a[0].sinh(),
        "cosh" => |a: &[f64]| a[0].cosh(),
        "tanh" => |a: &[f64]| a[0].tanh(),
        "exp" => |a: &[f64]| a[0].exp(),
        "log" => |a: &[f64]| a[0].ln(),
        "log10" => |a: &[f64]| a[0].log10(),
        "power" => |a: &[f64]| a[0].powf(a[1]),
        "min" => |a: &[f64]| a[0].min(a[1]),
        "max" => |a: &[f64]| a[0].max(a[1]),
        _ => return None,
    })
}
