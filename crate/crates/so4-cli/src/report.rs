use std::collections::BTreeMap;
use std::fmt::Write as _;

use so4_geom::quaternionic::{self, build_product};
use so4_geom::riemann::curvature;
use so4_geom::torsion::{self, harmonic_check};
use so4_geom::{Form, Scalar};

use crate::input::{CliError, Target};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClass {
    pub invariant: bool,
    pub lambda: Option<Scalar>,
    pub mu: Option<Scalar>,
    pub in_w: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionicRecord {
    pub hkt: bool,
    pub hyperkaehler: bool,
    pub eh_coef: Option<Scalar>,
    /// closed directions in the so(8)-orbit of Ω; absent when dΩ ≠ 0
    pub orbit_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub label: String,
    pub origin: Option<String>,
    pub dim: usize,
    pub jacobi: bool,
    pub harmonic: Option<bool>,
    pub dalpha: Option<Form>,
    pub dbeta: Option<Form>,
    pub dupsilon: Option<Form>,
    pub dstar_upsilon: Option<Form>,
    pub torsion: Option<TorsionClass>,
    pub flat: bool,
    pub einstein: bool,
    pub quaternionic: Option<QuaternionicRecord>,
}

impl StructureReport {
    pub fn build(target: &Target) -> Result<Self, CliError> {
        let g = target.adapted()?;
        let curv = curvature(&g)?;
        let mut report = StructureReport {
            label: g.label().to_string(),
            origin: target.origin.map(str::to_string),
            dim: g.dim(),
            jacobi: g.check_jacobi(),
            harmonic: None,
            dalpha: None,
            dbeta: None,
            dupsilon: None,
            dstar_upsilon: None,
            torsion: None,
            flat: curv.is_flat(),
            einstein: curv.is_einstein(),
            quaternionic: None,
        };
        if g.dim() != 7 {
            return Ok(report);
        }
        let h = harmonic_check(&g, None)?;
        report.harmonic = Some(h.harmonic());
        report.dalpha = Some(h.dalpha);
        report.dbeta = Some(h.dbeta);
        report.dupsilon = Some(h.dupsilon);
        report.dstar_upsilon = Some(h.dstar_upsilon);
        let t = torsion::intrinsic_torsion(&g)?;
        let (lambda, mu) = match t.lambda_mu.clone() {
            Some((l, m)) => (Some(l), Some(m)),
            None => (None, None),
        };
        report.torsion = Some(TorsionClass {
            invariant: t.invariant(),
            lambda,
            mu,
            in_w: t.in_w,
        });
        let ps = build_product(&g, None)?;
        let eh = quaternionic::eh_component(&ps)?;
        report.quaternionic = Some(QuaternionicRecord {
            hkt: quaternionic::hkt_check(&ps),
            hyperkaehler: quaternionic::hyperkaehler_check(&ps),
            eh_coef: eh.coef,
            orbit_dim: quaternionic::infinitesimal_closed_dim(&ps).ok(),
        });
        Ok(report)
    }

    /// `key = value` lines in a fixed order; absent values are written as `none`.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map(T::to_string).unwrap_or_else(|| "none".into())
        }
        let mut f = vec![
            ("label", self.label.clone()),
            ("origin", opt(&self.origin)),
            ("dim", self.dim.to_string()),
            ("jacobi", self.jacobi.to_string()),
            ("harmonic", opt(&self.harmonic)),
            ("dalpha", opt(&self.dalpha)),
            ("dbeta", opt(&self.dbeta)),
            ("dupsilon", opt(&self.dupsilon)),
            ("dstar_upsilon", opt(&self.dstar_upsilon)),
        ];
        match &self.torsion {
            Some(t) => f.extend([
                ("torsion.invariant", t.invariant.to_string()),
                ("torsion.lambda", opt(&t.lambda)),
                ("torsion.mu", opt(&t.mu)),
                ("torsion.in_w", t.in_w.to_string()),
            ]),
            None => f.push(("torsion", "none".into())),
        }
        f.push(("flat", self.flat.to_string()));
        f.push(("einstein", self.einstein.to_string()));
        match &self.quaternionic {
            Some(q) => f.extend([
                ("quaternionic.hkt", q.hkt.to_string()),
                ("quaternionic.hyperkaehler", q.hyperkaehler.to_string()),
                ("quaternionic.eh_coef", opt(&q.eh_coef)),
                ("quaternionic.orbit_dim", opt(&q.orbit_dim)),
            ]),
            None => f.push(("quaternionic", "none".into())),
        }
        f
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "structure report: {}", self.label);
        if let Some(o) = &self.origin {
            let _ = writeln!(out, "  source: {o}");
        }
        let width = self.fields().iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in self.fields().into_iter().skip(2) {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        out
    }

    pub fn from_machine(text: &str) -> Result<Self, String> {
        let map: BTreeMap<&str, &str> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_once(" = ").ok_or_else(|| format!("bad line `{l}`")))
            .collect::<Result<_, _>>()?;
        let get = |k: &str| map.get(k).copied().ok_or_else(|| format!("missing `{k}`"));
        let is_none = |k: &str| map.get(k).is_none_or(|v| *v == "none");
        let boolean = |k: &str| -> Result<bool, String> { get(k)?.parse().map_err(|_| format!("`{k}` is not a bool")) };
        let opt_bool = |k: &str| -> Result<Option<bool>, String> {
            if is_none(k) {
                Ok(None)
            } else {
                boolean(k).map(Some)
            }
        };
        let scalar = |k: &str| -> Result<Option<Scalar>, String> {
            if is_none(k) {
                return Ok(None);
            }
            Scalar::parse(get(k)?).map(Some).map_err(|e| format!("`{k}`: {e}"))
        };
        let dim: usize = get("dim")?.parse().map_err(|_| "bad dim".to_string())?;
        let form = |k: &str| -> Result<Option<Form>, String> {
            if is_none(k) {
                return Ok(None);
            }
            Form::parse(dim, get(k)?).map(Some).map_err(|e| format!("`{k}`: {e}"))
        };
        let torsion = if map.contains_key("torsion.invariant") {
            Some(TorsionClass {
                invariant: boolean("torsion.invariant")?,
                lambda: scalar("torsion.lambda")?,
                mu: scalar("torsion.mu")?,
                in_w: boolean("torsion.in_w")?,
            })
        } else {
            None
        };
        let quaternionic = if map.contains_key("quaternionic.hkt") {
            Some(QuaternionicRecord {
                hkt: boolean("quaternionic.hkt")?,
                hyperkaehler: boolean("quaternionic.hyperkaehler")?,
                eh_coef: scalar("quaternionic.eh_coef")?,
                orbit_dim: if is_none("quaternionic.orbit_dim") {
                    None
                } else {
                    Some(
                        get("quaternionic.orbit_dim")?
                            .parse()
                            .map_err(|_| "bad orbit_dim".to_string())?,
                    )
                },
            })
        } else {
            None
        };
        Ok(StructureReport {
            label: get("label")?.to_string(),
            origin: (!is_none("origin")).then(|| map["origin"].to_string()),
            dim,
            jacobi: boolean("jacobi")?,
            harmonic: opt_bool("harmonic")?,
            dalpha: form("dalpha")?,
            dbeta: form("dbeta")?,
            dupsilon: form("dupsilon")?,
            dstar_upsilon: form("dstar_upsilon")?,
            torsion,
            flat: boolean("flat")?,
            einstein: boolean("einstein")?,
            quaternionic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::load;

    fn report(name: &str) -> StructureReport {
        StructureReport::build(&load(&format!("builtin:{name}"), &[], None).unwrap()).unwrap()
    }

    #[test]
    fn machine_format_round_trips() {
        for name in ["n1", "h3", "abelian7", "lattice", "solv2"] {
            let r = report(name);
            assert_eq!(StructureReport::from_machine(&r.to_machine()).unwrap(), r, "{name}");
        }
    }

    #[test]
    fn n1_is_harmonic_and_h3_is_not() {
        assert_eq!(report("n1").harmonic, Some(true));
        let h3 = report("h3");
        assert_eq!(h3.harmonic, Some(false));
        let t = h3.torsion.unwrap();
        assert_eq!((t.lambda, t.mu), (Some(Scalar::ratio(-1, 2)), Some(Scalar::one())));
    }

    #[test]
    fn abelian_is_trivial() {
        let r = report("abelian7");
        assert!(r.flat && r.einstein && r.harmonic == Some(true));
        assert!(r.dalpha.unwrap().is_zero() && r.dstar_upsilon.unwrap().is_zero());
        let t = r.torsion.unwrap();
        assert!(t.invariant && t.in_w && t.lambda == Some(Scalar::zero()));
        let q = r.quaternionic.unwrap();
        assert!(q.hkt && q.hyperkaehler && q.eh_coef == Some(Scalar::zero()));
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(report("n5").to_machine(), report("n5").to_machine());
    }
}
