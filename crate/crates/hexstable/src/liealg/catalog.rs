//! Built-in catalog: the 34 six-dimensional nilpotent Lie algebras, the
//! 30 unimodular symplectic non-nilpotent solvable ones, the explicit
//! mean convex SU(3) pairs, and the tamed (rho, Omega) pairs.
//!
//! Every stored fact is reproducible by the library's own operations; the
//! test suites re-derive all of it.

use super::parser::{parse_algebra, parse_form};
use super::{AlgebraTemplate, LieAlgebra, LieError, ParamRange};
use crate::exterior::ExteriorForm;
use crate::scalars::{rat, QuadScalar, Rational};
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Nilpotent,
    Solvable,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Nilpotent => write!(f, "nilpotent"),
            Family::Solvable => write!(f, "solvable"),
        }
    }
}

/// Explicit mean convex closed SU(3)-structure attached to an algebra.
#[derive(Debug, Clone)]
pub struct Su3Example {
    pub omega: ExteriorForm<QuadScalar>,
    pub rho: ExteriorForm<QuadScalar>,
    /// Whether this particular pair is half-flat.
    pub half_flat: bool,
}

/// Closed definite 3-form tamed by a symplectic form `Omega`.
#[derive(Debug, Clone)]
pub struct TamedExample {
    pub rho: ExteriorForm<QuadScalar>,
    pub omega: ExteriorForm<QuadScalar>,
    /// Parameter values at which the pair is stated.
    pub params: Vec<(String, Rational)>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub template: AlgebraTemplate,
    pub family: Family,
    /// First Betti number for the nilpotent entries.
    pub b1: Option<usize>,
    /// Admits half-flat structures (for solvable entries: symplectic
    /// half-flat ones).
    pub half_flat: bool,
    pub symplectic: bool,
    pub su3_example: Option<Su3Example>,
    pub tamed_example: Option<TamedExample>,
    /// Sample admissible parameter values for parameterized entries.
    pub default_params: Vec<(String, Rational)>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.template.name
    }

    /// Instantiate at the default (sample) parameter values.
    pub fn algebra(&self) -> Result<LieAlgebra, LieError> {
        self.template.instantiate(&self.default_params)
    }

    pub fn algebra_with(&self, values: &[(String, Rational)]) -> Result<LieAlgebra, LieError> {
        if values.is_empty() {
            self.algebra()
        } else {
            self.template.instantiate(values)
        }
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_name: BTreeMap<String, usize>,
}

impl Catalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.by_name.get(name.trim()).map(|&i| &self.entries[i])
    }
}

/// Look up a catalog entry by name (e.g. `g24` or `A5,17(0,0,-1)+R`).
pub fn lookup(name: &str) -> Result<&'static CatalogEntry, LieError> {
    catalog()
        .get(name)
        .ok_or_else(|| LieError::UnknownAlgebra(name.trim().to_string()))
}

fn template(name: &str, params: &[(&str, ParamRange)], tuple: &str) -> AlgebraTemplate {
    let header = if params.is_empty() {
        "algebra x".to_string()
    } else {
        let names: Vec<&str> = params.iter().map(|(n, _)| *n).collect();
        format!("algebra x({})", names.join(","))
    };
    let mut t = parse_algebra(&format!("{header} = {tuple}"))
        .unwrap_or_else(|e| panic!("catalog structure equations for {name}: {e}"));
    t.name = name.to_string();
    for (pname, range) in params {
        let spec = t
            .params
            .iter_mut()
            .find(|p| &p.name == pname)
            .unwrap_or_else(|| panic!("catalog {name}: no parameter {pname}"));
        spec.range = range.clone();
    }
    t
}

fn form(text: &str) -> ExteriorForm<QuadScalar> {
    parse_form(text).unwrap_or_else(|e| panic!("catalog form literal `{text}`: {e}"))
}

struct EntryBuilder {
    entry: CatalogEntry,
}

impl EntryBuilder {
    fn nilpotent(name: &str, tuple: &str, b1: usize, half_flat: bool, symplectic: bool) -> Self {
        EntryBuilder {
            entry: CatalogEntry {
                template: template(name, &[], tuple),
                family: Family::Nilpotent,
                b1: Some(b1),
                half_flat,
                symplectic,
                su3_example: None,
                tamed_example: None,
                default_params: Vec::new(),
            },
        }
    }

    fn solvable(name: &str, params: &[(&str, ParamRange)], tuple: &str) -> Self {
        EntryBuilder {
            entry: CatalogEntry {
                template: template(name, params, tuple),
                family: Family::Solvable,
                b1: None,
                half_flat: false,
                symplectic: true,
                su3_example: None,
                tamed_example: None,
                default_params: Vec::new(),
            },
        }
    }

    fn su3(mut self, omega: &str, rho: &str, half_flat: bool) -> Self {
        self.entry.su3_example = Some(Su3Example {
            omega: form(omega),
            rho: form(rho),
            half_flat,
        });
        self
    }

    fn tamed(mut self, rho: &str, omega: &str, params: &[(&str, Rational)]) -> Self {
        self.entry.tamed_example = Some(TamedExample {
            rho: form(rho),
            omega: form(omega),
            params: params.iter().map(|(n, v)| (n.to_string(), v.clone())).collect(),
        });
        self.entry.half_flat = true;
        self
    }

    fn defaults(mut self, params: &[(&str, Rational)]) -> Self {
        self.entry.default_params =
            params.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        self
    }

    fn build(self) -> CatalogEntry {
        self.entry
    }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Catalog {
    let mut entries: Vec<CatalogEntry> = Vec::with_capacity(64);

    // ---- nilpotent algebras -------------------------------------------
    entries.push(
        EntryBuilder::nilpotent("g1", "(0,0,e12,e13,e14+e23,e34-e25)", 2, false, false).build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g2", "(0,0,e12,e13,e14,e34-e25)", 2, false, false).build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g3", "(0,0,e12,e13,e14,e15)", 2, false, true)
            .su3(
                "-e12-e35-e46",
                "-5/4*e136+5/4*e145-e156-e234-e236+e245",
                false,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g4", "(0,0,e12,e13,e14+e23,e24+e15)", 2, true, true).build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g5", "(0,0,e12,e13,e14,e23+e15)", 2, false, true)
            .su3("-e12-e35-e46", "1/2*e134-e156-e236+2*e245", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g6", "(0,0,e12,e13,e23,e14)", 2, true, true)
            .su3("e15-e24-e36", "e123-e134-e146-e235-e256-e345", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g7", "(0,0,e12,e13,e23,e14-e25)", 2, true, true)
            .su3(
                "-1/2*e15+1/2*e24-3/2*e36",
                "-3/4*e123+1/3*e134-e146+1/12*e235-1/4*e256+3/4*e345",
                true,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g8", "(0,0,e12,e13,e23,e14+e25)", 2, true, true)
            .su3(
                "e15-e24-1/2*e36",
                "e123-e134-1/2*e146-e235-1/2*e256-e345",
                true,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g9", "(0,0,0,e12,e14-e23,e15+e34)", 3, true, true).build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g10", "(0,0,0,e12,e14,e15+e23)", 3, true, true)
            .su3(
                "-1/2*e13+e46-e25",
                "e124-e145+e156-1/2*e234-1/2*e236+1/2*e345",
                true,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g11", "(0,0,0,e12,e14,e15+e23+e24)", 3, true, true)
            .su3(
                "5/4*e13+28/3*e24+e25-82/15*e26+5/4*e34+e35+e45+14/3*e46+e56",
                "2*e125+e126-5/4*e134+e136+e146+e156-e236+e245-e246",
                false,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g12", "(0,0,0,e12,e14,e15+e24)", 3, true, true).build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g13", "(0,0,0,e12,e14,e15)", 3, true, true)
            .su3("e13+e46+e25", "-e124+e145+e156+e234-e236-e345", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g14", "(0,0,0,e12,e13,e14+e35)", 3, true, false)
            .su3("e13-e26+e45", "-e125-e146+e234+e356", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g15", "(0,0,0,e12,e23,e14+e35)", 3, true, false)
            .su3("e15+e34-e26", "e123+e136-e146+e235-e245+e356", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g16", "(0,0,0,e12,e23,e14-e35)", 3, true, false)
            .su3(
                "e13+e26-e45",
                "2*e124-sqrt(2)/2*e156-e235+sqrt(2)/2*e346",
                true,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g17", "(0,0,0,e12,e14,e24)", 3, false, false)
            .su3("e12+e34+e56", "-e135+2*e146+e236+1/2*e245", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g18", "(0,0,0,e12,e13-e24,e14+e23)", 3, false, true)
            .su3(
                "e12-e34-e56",
                "e135-sqrt(5)/2*e146+sqrt(5)/2*e236+e245+e246",
                false,
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g19", "(0,0,0,e12,e14,e13-e24)", 3, false, true)
            .su3("-e12+e34-e56", "e135+e146-e236+e245", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g20", "(0,0,0,e12,e13+e14,e24)", 3, false, true)
            .su3("-e12-e34+e56", "-e135-e146+e235-e236+e245+e246", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g21", "(0,0,0,e12,e13,e14+e23)", 3, true, true)
            .su3("-e12-e34+e56", "-2*e136+e145+1/2*e235+e246", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g22", "(0,0,0,e12,e13,e24)", 3, true, true)
            .su3("e16+e23+e45", "e124-e135-e256-e346", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g23", "(0,0,0,e12,e13,e14)", 3, false, true)
            .su3("e12+e34+e56", "2*e136+1/2*e145+e235-e246", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g24", "(0,0,0,e12,e13,e23)", 3, true, true)
            .su3("-e16+e25-e34", "-e123+e145+e246+e356", true)
            .tamed(
                "-e125-e146-e156-e236-e245-e345-e356",
                "e13+1/2*e14-1/2*e24+e26+e35+e36",
                &[],
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g25", "(0,0,0,0,e12,e15+e34)", 4, true, false)
            .su3("-e13+e45+e26", "e156+e124-e235-e346", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g26", "(0,0,0,0,e12,e15)", 4, false, true)
            .su3("e16+e23-e36+e45", "-2*e124+e135+e146-e234+e256", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g27", "(0,0,0,0,e12,e14+e25)", 4, true, true)
            .su3("-sqrt(3)/2*e12-e45+e36", "e135+e146+e234+e235-e256", false)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g28", "(0,0,0,0,e13-e24,e14+e23)", 4, true, true)
            .su3("-e12-e34+e56", "-e136+e145+e235+e246", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g29", "(0,0,0,0,e12,e14+e23)", 4, true, true)
            .su3("e13+e24-e56", "e126-e145+e235-e346", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g30", "(0,0,0,0,e12,e34)", 4, true, true)
            .su3("e13-e24+e56", "e125-e126+e145+e146+e236+e345", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g31", "(0,0,0,0,e12,e13)", 4, true, true)
            .su3("-e14-e35+e26", "-e123+e156-e245-e346", true)
            .tamed(
                "e123+2*e145+e156+e235+e246+e345",
                "e16-e25-e34+e36",
                &[],
            )
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g32", "(0,0,0,0,0,e12+e34)", 5, true, false)
            .su3("-sqrt(2)*e13-e24-e56", "-e125+e146-e236+2*e345", true)
            .build(),
    );
    entries.push(
        EntryBuilder::nilpotent("g33", "(0,0,0,0,0,e12)", 5, true, true)
            .su3("-e13-e24-e56", "-e125+e146-e236+e345", true)
            .build(),
    );
    entries.push(EntryBuilder::nilpotent("g34", "(0,0,0,0,0,0)", 6, true, true).build());

    // ---- solvable algebras (unimodular symplectic, non-nilpotent) -----
    let pos = ParamRange::Interval { lo: Some((rat(0, 1), false)), hi: None };
    entries.push(EntryBuilder::solvable("g6,3(0,-1)", &[], "(e26,e36,0,e46,-e56,0)").build());
    entries.push(EntryBuilder::solvable("g6,10(0,0)", &[], "(e26,e36,0,e56,-e46,0)").build());
    entries.push(
        EntryBuilder::solvable("g6,13(-1,1/2,0)", &[], "(-1/2*e16+e23,-e26,1/2*e36,e46,0,0)")
            .build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,13(1/2,-1,0)", &[], "(-1/2*e16+e23,1/2*e26,-e36,e46,0,0)")
            .build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,15(-1)", &[], "(e23,e26,-e36,e26+e46,e36-e56,0)").build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,18(-1,-1)", &[], "(e23,-e26,e36,e36+e46,-e56,0)").build(),
    );
    entries.push(EntryBuilder::solvable("g6,21(0)", &[], "(e23,0,e26,e46,-e56,0)").build());
    entries.push(EntryBuilder::solvable("g6,36(0,0)", &[], "(e23,0,e26,-e56,e46,0)").build());
    entries.push(
        EntryBuilder::solvable("g6,38(0)", &[], "(e23,-e36,e26,e26-e56,e36+e46,0)")
            .tamed("-e124-e135+e236-e456", "-2*e16+e23-e25+e34", &[])
            .build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,54(0,-1)", &[], "(e16+e35,-e26+e45,e36,-e46,0,0)")
            .tamed("e125-e136+e246+e345", "e14+e23+e34+4/3*e56", &[])
            .build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,70(0,0)", &[], "(-e26+e35,e16+e45,-e46,e36,0,0)").build(),
    );
    entries.push(
        EntryBuilder::solvable("g6,78", &[], "(-e16+e25,e45,e24+e36+e46,e46,-e56,0)").build(),
    );
    entries.push(
        EntryBuilder::solvable(
            "g6,118(0,-1,-1)",
            &[],
            "(-e16+e25,-e15-e26,e36-e45,e35+e46,0,0)",
        )
        .tamed("e126+e135+e145-e245+e346", "e14+e23+e56", &[])
        .build(),
    );
    entries.push(
        EntryBuilder::solvable(
            "n6,84",
            &[("s", ParamRange::Discrete(vec![rat(1, 1), rat(-1, 1)]))],
            "(-e45,-e15-e36,-e14+e26-s*e56,e56,-e46,0)",
        )
        .defaults(&[("s", rat(1, 1))])
        .build(),
    );
    entries.push(EntryBuilder::solvable("e(2)+e(2)", &[], "(0,-e13,e12,0,-e46,e45)").build());
    entries.push(
        EntryBuilder::solvable("e(1,1)+e(1,1)", &[], "(0,-e13,-e12,0,-e46,-e45)")
            .tamed(
                "-e125-e126+e135-e145-e246+e345+e346",
                "-e14+e23-2*e56",
                &[],
            )
            .build(),
    );
    entries.push(EntryBuilder::solvable("e(2)+R3", &[], "(0,-e13,e12,0,0,0)").build());
    entries.push(EntryBuilder::solvable("e(1,1)+R3", &[], "(0,-e13,-e12,0,0,0)").build());
    entries.push(EntryBuilder::solvable("e(2)+e(1,1)", &[], "(0,-e13,e12,0,-e46,-e45)").build());
    entries.push(EntryBuilder::solvable("e(2)+h", &[], "(0,-e13,e12,0,0,e45)").build());
    entries.push(EntryBuilder::solvable("e(1,1)+h", &[], "(0,-e13,-e12,0,0,e45)").build());
    entries.push(
        EntryBuilder::solvable(
            "A5,7(-1,b,-b)+R",
            &[(
                "b",
                ParamRange::Interval { lo: Some((rat(-1, 1), true)), hi: Some((rat(0, 1), false)) },
            )],
            "(e15,-e25,b*e35,-b*e45,0,0)",
        )
        .defaults(&[("b", rat(-1, 1))])
        .tamed(
            "-e126-e145-e235-e346",
            "-e13+e15+e24+e56",
            &[("b", rat(-1, 1))],
        )
        .build(),
    );
    entries.push(EntryBuilder::solvable("A5,8(-1)+R", &[], "(e25,0,e35,-e45,0,0)").build());
    entries.push(
        EntryBuilder::solvable(
            "A5,13(-1,0,g)+R",
            &[("g", pos.clone())],
            "(e15,-e25,g*e45,-g*e35,0,0)",
        )
        .defaults(&[("g", rat(1, 1))])
        .build(),
    );
    entries.push(EntryBuilder::solvable("A5,14(0)+R", &[], "(e25,0,e45,-e35,0,0)").build());
    entries.push(
        EntryBuilder::solvable("A5,15(-1)+R", &[], "(e15+e25,e25,-e35+e45,-e45,0,0)").build(),
    );
    entries.push(
        EntryBuilder::solvable(
            "A5,17(0,0,g)+R",
            &[(
                "g",
                ParamRange::Interval {
                    lo: Some((rat(-1, 1), false)),
                    hi: Some((rat(0, 1), false)),
                },
            )],
            "(e25,-e15,g*e45,-g*e35,0,0)",
        )
        .defaults(&[("g", rat(-1, 2))])
        .build(),
    );
    entries.push(
        EntryBuilder::solvable("A5,17(0,0,-1)+R", &[], "(e25,-e15,-e45,e35,0,0)")
            .tamed(
                "e135-e146+e236+e245+e346-e356",
                "e12-e14+e23-e56",
                &[],
            )
            .build(),
    );
    entries.push(
        EntryBuilder::solvable(
            "A5,17(a,-a,1)+R",
            &[("a", pos.clone())],
            "(a*e15+e25,-e15+a*e25,-a*e35+e45,-e35-a*e45,0,0)",
        )
        .defaults(&[("a", rat(1, 1))])
        .tamed(
            "e125+e136+e145+e246-e345",
            "-e14+e23-e56",
            &[("a", rat(1, 1))],
        )
        .build(),
    );
    entries.push(
        EntryBuilder::solvable("A5,18(0)+R", &[], "(e25+e35,-e15+e45,e45,-e35,0,0)").build(),
    );
    entries.push(
        EntryBuilder::solvable("A5,19(-1,2)+R", &[], "(-e15+e23,e25,-2*e35,2*e45,0,0)").build(),
    );

    let mut by_name = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        let prev = by_name.insert(e.name().to_string(), i);
        assert!(prev.is_none(), "duplicate catalog name {}", e.name());
    }
    Catalog { entries, by_name }
}
