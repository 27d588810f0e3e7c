//! Threefold descriptor files.
//!
//! ```text
//! name: M2_30
//! ambient: P3
//! curve: 1 degree=2
//! basis: q0 = L0-2*F1
//! basis: q1 = F1
//! geom: I(L0-F1 | rho, pt) = 2
//! ```

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, render_rational, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    P3,
    Q3,
}

impl Ambient {
    /// Index of the ambient space: `-K_X = index * H`.
    pub fn index(self) -> i64 {
        match self {
            Ambient::P3 => 4,
            Ambient::Q3 => 3,
        }
    }

    /// `H^2 = self.h_squared() * rho`.
    pub fn h_squared(self) -> i64 {
        match self {
            Ambient::P3 => 1,
            Ambient::Q3 => 2,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::P3 => "P3",
            Ambient::Q3 => "Q3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Curve {
    pub index: usize,
    pub degree: u32,
}

/// Curve class in the geometric basis: `l0 * L0 + sum f[j] * F(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassExpr {
    pub l0: i64,
    pub f: Vec<i64>,
}

impl ClassExpr {
    pub fn zero(ncurves: usize) -> Self {
        Self {
            l0: 0,
            f: vec![0; ncurves],
        }
    }

    pub fn coords(&self) -> Vec<i64> {
        std::iter::once(self.l0)
            .chain(self.f.iter().copied())
            .collect()
    }

    pub fn from_coords(c: &[i64]) -> Self {
        Self {
            l0: c[0],
            f: c[1..].to_vec(),
        }
    }

    /// Parses an integer combination of `L0`, `F1`, `F2` (`F` = `F1`).
    pub fn parse(text: &str, ncurves: usize) -> std::result::Result<Self, String> {
        let mut out = Self::zero(ncurves);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty class expression".into());
        }
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                _ if first => 1,
                _ => return Err(format!("expected `+` or `-` in `{text}`")),
            };
            first = false;
            let end = rest[1..].find(['+', '-']).map_or(rest.len(), |k| k + 1);
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (coef, sym) = match term.split_once('*') {
                Some((c, s)) => (
                    c.parse::<i64>()
                        .map_err(|_| format!("bad coefficient `{c}`"))?,
                    s,
                ),
                None => {
                    let digits = term.chars().take_while(char::is_ascii_digit).count();
                    if digits == 0 {
                        (1, term)
                    } else if digits == term.len() {
                        return Err(format!("bare integer `{term}` in class expression"));
                    } else {
                        (term[..digits].parse::<i64>().unwrap(), &term[digits..])
                    }
                }
            };
            let c = sign * coef;
            match sym {
                "L0" | "L" => out.l0 += c,
                "F" if ncurves == 1 => out.f[0] += c,
                _ => {
                    let j = sym
                        .strip_prefix('F')
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|&j| j >= 1 && j <= ncurves)
                        .ok_or_else(|| format!("unknown class symbol `{sym}`"))?;
                    out.f[j - 1] += c;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ClassExpr {
    /// Compact form such as `L0-2*F1` or `F2`; the zero class prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let names =
            std::iter::once("L0".to_string()).chain((1..=self.f.len()).map(|j| format!("F{j}")));
        for (c, name) in self.coords().into_iter().zip(names) {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            f.write_str(&name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Insertion classes allowed in geometric relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Insertion {
    Rho,
    Phi(usize),
    Pt,
}

impl Insertion {
    pub fn parse(s: &str, ncurves: usize) -> std::result::Result<Self, String> {
        match s {
            "rho" => Ok(Insertion::Rho),
            "pt" => Ok(Insertion::Pt),
            "phi" if ncurves == 1 => Ok(Insertion::Phi(1)),
            _ => s
                .strip_prefix("phi")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&j| j >= 1 && j <= ncurves)
                .map(Insertion::Phi)
                .ok_or_else(|| format!("unknown insertion `{s}`")),
        }
    }

    pub fn codim(self) -> i64 {
        match self {
            Insertion::Rho | Insertion::Phi(_) => 2,
            Insertion::Pt => 3,
        }
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Insertion::Rho => f.write_str("rho"),
            Insertion::Phi(j) => write!(f, "phi{j}"),
            Insertion::Pt => f.write_str("pt"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomRelation {
    pub class: ClassExpr,
    pub insertions: Vec<Insertion>,
    pub value: Rational,
}

impl fmt::Display for GeomRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<String> = self.insertions.iter().map(ToString::to_string).collect();
        write!(
            f,
            "I({} | {}) = {}",
            self.class,
            ins.join(", "),
            render_rational(&self.value)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldDescriptor {
    pub name: String,
    pub ambient: Ambient,
    pub curves: Vec<Curve>,
    /// `basis[i]` is the class of `q_i`.
    pub basis: Vec<ClassExpr>,
    pub geom: Vec<GeomRelation>,
}

impl ThreefoldDescriptor {
    pub fn ncurves(&self) -> usize {
        self.curves.len()
    }

    /// `-K . beta` for a class in geometric coordinates.
    pub fn anticanonical_degree(&self, c: &ClassExpr) -> i64 {
        self.ambient.index() * c.l0 + c.f.iter().sum::<i64>()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut ambient = None;
        let mut curves: Vec<(usize, Curve)> = Vec::new();
        let mut basis_lines: Vec<(usize, usize, String)> = Vec::new();
        let mut geom_lines: Vec<(usize, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let syntax = |msg: String| Error::Syntax { line, msg };
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected `key: value`, got `{content}`")))?;
            let value = value.trim();
            match key.trim() {
                "name" => {
                    if value.is_empty() || value.contains(char::is_whitespace) {
                        return Err(syntax(format!("bad name `{value}`")));
                    }
                    if name.replace(value.to_string()).is_some() {
                        return Err(syntax("duplicate `name`".into()));
                    }
                }
                "ambient" => {
                    let a = match value {
                        "P3" => Ambient::P3,
                        "Q3" => Ambient::Q3,
                        _ => return Err(syntax(format!("unknown ambient `{value}`"))),
                    };
                    if ambient.replace(a).is_some() {
                        return Err(syntax("duplicate `ambient`".into()));
                    }
                }
                "curve" => curves.push((line, parse_curve(value).map_err(syntax)?)),
                "basis" => {
                    let (lhs, rhs) = value
                        .split_once('=')
                        .ok_or_else(|| syntax("expected `q<i> = <class>`".into()))?;
                    let i = lhs
                        .trim()
                        .strip_prefix('q')
                        .and_then(|n| n.parse::<usize>().ok())
                        .ok_or_else(|| syntax(format!("bad basis label `{}`", lhs.trim())))?;
                    basis_lines.push((line, i, rhs.trim().to_string()));
                }
                "geom" => geom_lines.push((line, value.to_string())),
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| Error::Descriptor("missing `name`".into()))?;
        let ambient = ambient.ok_or_else(|| Error::Descriptor("missing `ambient`".into()))?;
        if curves.is_empty() || curves.len() > 2 {
            return Err(Error::Descriptor(format!(
                "expected one or two curves, found {}",
                curves.len()
            )));
        }
        for (pos, (line, c)) in curves.iter().enumerate() {
            if c.index != pos + 1 {
                return Err(Error::Syntax {
                    line: *line,
                    msg: format!("curves must be numbered 1, 2 in order; found {}", c.index),
                });
            }
        }
        let curves: Vec<Curve> = curves.into_iter().map(|(_, c)| c).collect();
        let k = curves.len();

        let mut basis = vec![None; k + 1];
        for (line, i, rhs) in basis_lines {
            let syntax = |msg: String| Error::Syntax { line, msg };
            if i > k {
                return Err(syntax(format!(
                    "basis label q{i} out of range for rank {}",
                    k + 1
                )));
            }
            let c = ClassExpr::parse(&rhs, k).map_err(syntax)?;
            if basis[i].replace(c).is_some() {
                return Err(syntax(format!("duplicate basis line for q{i}")));
            }
        }
        let mut missing = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_none())
            .map(|(i, _)| i);
        if let Some(i) = missing.next() {
            return Err(Error::Descriptor(format!(
                "basis is not unimodular: no class given for q{i}"
            )));
        }
        let basis: Vec<ClassExpr> = basis.into_iter().map(Option::unwrap).collect();
        let det = basis_matrix(&basis).det();
        if det != crate::exactpoly::int(1) && det != crate::exactpoly::int(-1) {
            return Err(Error::Descriptor(format!(
                "basis is not unimodular (determinant {})",
                render_rational(&det)
            )));
        }

        let mut d = ThreefoldDescriptor {
            name,
            ambient,
            curves,
            basis,
            geom: Vec::new(),
        };
        for (line, text) in geom_lines {
            let g = parse_geom(&text, k).map_err(|msg| Error::Syntax { line, msg })?;
            let codim: i64 = g.insertions.iter().map(|i| i.codim()).sum();
            let expected = d.anticanonical_degree(&g.class) + g.insertions.len() as i64;
            if codim != expected {
                return Err(Error::Syntax {
                    line,
                    msg: format!(
                        "insertion codimensions sum to {codim}, grading requires {expected}"
                    ),
                });
            }
            d.geom.push(g);
        }
        Ok(d)
    }

    pub fn render(&self) -> String {
        let mut s = format!("name: {}\nambient: {}\n", self.name, self.ambient);
        for c in &self.curves {
            s += &format!("curve: {} degree={}\n", c.index, c.degree);
        }
        for (i, b) in self.basis.iter().enumerate() {
            s += &format!("basis: q{i} = {b}\n");
        }
        for g in &self.geom {
            s += &format!("geom: {g}\n");
        }
        s
    }
}

/// Rows are the geometric coordinates of the basis classes.
pub(crate) fn basis_matrix(basis: &[ClassExpr]) -> Matrix {
    Matrix::from_rows(
        basis
            .iter()
            .map(|b| b.coords().into_iter().map(crate::exactpoly::int).collect())
            .collect(),
    )
}

fn parse_curve(value: &str) -> std::result::Result<Curve, String> {
    let mut parts = value.split_whitespace();
    let index = parts
        .next()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| format!("expected `<index> degree=<d>`, got `{value}`"))?;
    let mut degree = None;
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("expected `key=value`, got `{p}`"))?;
        let v: u32 = v.parse().map_err(|_| format!("bad value in `{p}`"))?;
        match k {
            "degree" if v >= 1 => degree = Some(v),
            "degree" => return Err("curve degree must be positive".into()),
            "genus" if v == 0 => {}
            "genus" => return Err(format!("only rational curves are supported (genus {v})")),
            _ => return Err(format!("unknown curve attribute `{k}`")),
        }
    }
    let degree = degree.ok_or("missing `degree=`")?;
    Ok(Curve { index, degree })
}

fn parse_geom(text: &str, ncurves: usize) -> std::result::Result<GeomRelation, String> {
    let (lhs, rhs) = text
        .rsplit_once('=')
        .ok_or("expected `I(<class> | <insertions>) = <value>`")?;
    let inner = lhs
        .trim()
        .strip_prefix("I(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("expected `I(<class> | <insertions>)`")?;
    let (class, ins) = inner.split_once('|').ok_or("missing `|` in invariant")?;
    let class = ClassExpr::parse(class, ncurves)?;
    if class.coords().iter().all(Zero::is_zero) {
        return Err("geometric relation on the zero class".into());
    }
    let mut insertions = ins
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Insertion::parse(s, ncurves))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    insertions.sort();
    let value = parse_rational(rhs).map_err(|e| e.to_string())?;
    Ok(GeomRelation {
        class,
        insertions,
        value,
    })
}
