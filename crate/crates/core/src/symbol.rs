//! Symbol values with provenance, and label-sorted tables of them.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::halfint::{coupled_spins, m_values, triangle, HalfInt};
use crate::matrix::C64;
use crate::nonstandard::{AlphaLabel, CouplingTable};
use crate::standard::{cg, ninej, sixj, threejm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Standard,
    Nonstandard,
}

/// One argument of a symbol.
#[derive(Clone, Debug, PartialEq)]
pub enum Label {
    Spin(HalfInt),
    Alpha(AlphaLabel),
}

impl Label {
    /// Exact sort key: `twice` for spins, the step index for alpha labels.
    fn key(&self) -> i64 {
        match self {
            Label::Spin(h) => i64::from(h.twice),
            Label::Alpha(a) => a.s as i64,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Label::Spin(h) => h.to_string(),
            Label::Alpha(a) => format_alpha(a.alpha()),
        }
    }
}

/// Shortest decimal that round-trips, with `-0` folded to `0`.
pub fn format_alpha(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let rounded = (x * 1e12).round() / 1e12;
    format!("{rounded}")
}

/// Parses `r` from a decimal (`0.37`) or a ratio of integers (`3/8`).
pub fn parse_r(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::ParseR(s.to_string());
    let v = match t.split_once('/') {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            p as f64 / q as f64
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolValue {
    pub value: C64,
    pub scheme: Scheme,
    pub formula: &'static str,
    pub labels: Vec<(String, Label)>,
}

impl SymbolValue {
    fn new(value: C64, scheme: Scheme, formula: &'static str, labels: Vec<(&str, Label)>) -> Self {
        SymbolValue {
            value,
            scheme,
            formula,
            labels: labels.into_iter().map(|(n, l)| (n.to_string(), l)).collect(),
        }
    }

    pub fn sort_key(&self) -> Vec<i64> {
        self.labels.iter().map(|(_, l)| l.key()).collect()
    }

    /// Label names followed by their text values, in argument order.
    pub fn label_columns(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (name, l) in &self.labels {
            out.push((name.clone(), l.text()));
            if let Label::Alpha(a) = l {
                out.push((format!("s_{name}"), a.s.to_string()));
            }
        }
        out
    }
}

struct LabelMap<'a>(&'a SymbolValue);

impl Serialize for LabelMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cols = self.0.label_columns();
        let mut map = serializer.serialize_map(Some(cols.len()))?;
        for (k, v) in &cols {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for SymbolValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SymbolValue", 4)?;
        st.serialize_field("labels", &LabelMap(self))?;
        st.serialize_field("value", &[self.value.re, self.value.im])?;
        st.serialize_field("scheme", &self.scheme)?;
        st.serialize_field("formula", self.formula)?;
        st.end()
    }
}

fn sorted(mut rows: Vec<SymbolValue>) -> Vec<SymbolValue> {
    rows.sort_by_key(|a| a.sort_key());
    rows
}

/// `(j1 j2 alpha1 alpha2 | j alpha; r)` for every `j` in `j1 x j2` and every label.
pub fn tabulate_cg_nonstandard(j1: HalfInt, j2: HalfInt, r: f64) -> Result<Vec<SymbolValue>> {
    let a1s = AlphaLabel::all(j1, r)?;
    let a2s = AlphaLabel::all(j2, r)?;
    let mut rows = Vec::new();
    for j in coupled_spins(j1, j2) {
        let t = CouplingTable::new(j1, j2, j, r)?;
        let as_ = AlphaLabel::all(j, r)?;
        for a1 in &a1s {
            for a2 in &a2s {
                for a in &as_ {
                    rows.push(SymbolValue::new(
                        t.get(a1.s, a2.s, a.s),
                        Scheme::Nonstandard,
                        "cg_nonstandard",
                        vec![
                            ("j1", Label::Spin(j1)),
                            ("j2", Label::Spin(j2)),
                            ("j", Label::Spin(j)),
                            ("alpha1", Label::Alpha(*a1)),
                            ("alpha2", Label::Alpha(*a2)),
                            ("alpha", Label::Alpha(*a)),
                        ],
                    ));
                }
            }
        }
    }
    Ok(sorted(rows))
}

/// `fbar_r` or `f_r` over every label of a fixed `(j1, j2, j3)`.
pub fn tabulate_fbar(j1: HalfInt, j2: HalfInt, j3: HalfInt, r: f64, small: bool) -> Result<Vec<SymbolValue>> {
    let a1s = AlphaLabel::all(j1, r)?;
    let a2s = AlphaLabel::all(j2, r)?;
    let a3s = AlphaLabel::all(j3, r)?;
    let (formula, f): (&'static str, fn(_, _, _, _, _, _) -> Result<C64>) = if small {
        ("f_small", crate::nonstandard::f_small)
    } else {
        ("fbar", crate::nonstandard::fbar)
    };
    let mut rows = Vec::new();
    for a1 in &a1s {
        for a2 in &a2s {
            for a3 in &a3s {
                rows.push(SymbolValue::new(
                    f(j1, j2, j3, a1, a2, a3)?,
                    Scheme::Nonstandard,
                    formula,
                    vec![
                        ("j1", Label::Spin(j1)),
                        ("j2", Label::Spin(j2)),
                        ("j3", Label::Spin(j3)),
                        ("alpha1", Label::Alpha(*a1)),
                        ("alpha2", Label::Alpha(*a2)),
                        ("alpha3", Label::Alpha(*a3)),
                    ],
                ));
            }
        }
    }
    Ok(sorted(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Cg,
    ThreeJm,
    SixJ,
    NineJ,
}

fn spins_up_to(j_max: HalfInt) -> Vec<HalfInt> {
    (0..=j_max.twice.max(0)).map(HalfInt::from_twice).collect()
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// Every non-vanishing standard symbol of the given kind with all spin
/// arguments `<= j_max`.
pub fn tabulate_standard(kind: StandardKind, j_max: HalfInt) -> Result<Vec<SymbolValue>> {
    let js = spins_up_to(HalfInt::spin(j_max.twice)?);
    let mut rows = Vec::new();
    match kind {
        StandardKind::Cg | StandardKind::ThreeJm => {
            for &j1 in &js {
                for &j2 in &js {
                    for &j3 in &js {
                        if !triangle(j1, j2, j3) {
                            continue;
                        }
                        for m1 in m_values(j1)? {
                            for m2 in m_values(j2)? {
                                let (m3, v, formula, names) = if kind == StandardKind::Cg {
                                    let m = m1 + m2;
                                    (m, cg(j1, j2, m1, m2, j3, m), "cg", ["j1", "j2", "j", "m1", "m2", "m"])
                                } else {
                                    let m = -(m1 + m2);
                                    (m, threejm(j1, j2, j3, m1, m2, m), "threejm", ["j1", "j2", "j3", "m1", "m2", "m3"])
                                };
                                if m3.twice.abs() > j3.twice || v.is_zero() {
                                    continue;
                                }
                                rows.push(SymbolValue::new(
                                    real(v.to_f64()),
                                    Scheme::Standard,
                                    formula,
                                    names
                                        .iter()
                                        .zip([j1, j2, j3, m1, m2, m3])
                                        .map(|(n, h)| (*n, Label::Spin(h)))
                                        .collect(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        StandardKind::SixJ => {
            let names = ["j1", "j2", "j3", "j4", "j5", "j6"];
            for_each_tuple(&js, 6, &mut |t| {
                let v = sixj(t[0], t[1], t[2], t[3], t[4], t[5]);
                if !v.is_zero() {
                    rows.push(SymbolValue::new(
                        real(v.to_f64()),
                        Scheme::Standard,
                        "sixj",
                        names.iter().zip(t).map(|(n, h)| (*n, Label::Spin(*h))).collect(),
                    ));
                }
            });
        }
        StandardKind::NineJ => {
            let names = ["j1", "j2", "j3", "j4", "j5", "j6", "j7", "j8", "j9"];
            for_each_tuple(&js, 9, &mut |t| {
                let rows_ok = triangle(t[0], t[1], t[2]) && triangle(t[3], t[4], t[5]) && triangle(t[6], t[7], t[8]);
                let cols_ok = triangle(t[0], t[3], t[6]) && triangle(t[1], t[4], t[7]) && triangle(t[2], t[5], t[8]);
                if !(rows_ok && cols_ok) {
                    return;
                }
                let v = ninej(t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8]);
                if !v.is_zero() {
                    rows.push(SymbolValue::new(
                        real(v.to_f64()),
                        Scheme::Standard,
                        "ninej",
                        names.iter().zip(t).map(|(n, h)| (*n, Label::Spin(*h))).collect(),
                    ));
                }
            });
        }
    }
    Ok(sorted(rows))
}

fn for_each_tuple(values: &[HalfInt], n: usize, f: &mut dyn FnMut(&[HalfInt])) {
    let mut idx = vec![0usize; n];
    let mut buf = vec![values[0]; n];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = values[i];
        }
        f(&buf);
        let mut p = n;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < values.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}
