//! Construction expression language:
//! `R | C | Cstar | H | O | Hplus | mut(E,l) | plus(E) | cd(E,g) |
//!  gcd(E,g,a,b,d,t) | isotope(E,@matrixfile) | quad(@structfile) |
//!  jform(@matrixfile) | osborn4(a,b,g) | table1(...) | table4(...) |
//!  table5(...) | table7(...)`.

use crate::files;
use anyhow::{anyhow, bail, Result};
use nadiv_core::constructions::{self, GcdParams, Table1Params};
use nadiv_core::Algebra;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub enum Arg {
    Expr(Expr),
    Num(f64),
    File(String),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub name: String,
    pub pos: usize,
    pub args: Vec<Arg>,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        start
    }

    fn error(&self, msg: &str) -> anyhow::Error {
        anyhow!("parse error at position {}: {msg}", self.pos)
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
        if self.pos == start {
            return Err(self.error("expected a construction name"));
        }
        let name = self.text[start..self.pos].to_string();
        self.skip_ws();
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    None => return Err(self.error("unterminated argument list")),
                    _ => {}
                }
                args.push(self.parse_arg()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        Ok(Expr { name, pos: start, args })
    }

    fn parse_arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        match self.peek() {
            Some(b'@') => {
                self.pos += 1;
                let start = self.take_while(|c| c != b',' && c != b')' && !c.is_ascii_whitespace());
                if self.pos == start {
                    return Err(self.error("expected a file path after `@`"));
                }
                Ok(Arg::File(self.text[start..self.pos].to_string()))
            }
            Some(c) if c == b'-' || c == b'+' || c == b'.' || c.is_ascii_digit() => {
                let start = self.take_while(|c| {
                    c.is_ascii_digit() || c == b'.' || c == b'-' || c == b'+' || c == b'e' || c == b'E'
                });
                let lit = &self.text[start..self.pos];
                let v: f64 = lit
                    .parse()
                    .map_err(|_| anyhow!("parse error at position {start}: bad number `{lit}`"))?;
                Ok(Arg::Num(v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => Ok(Arg::Expr(self.parse_expr()?)),
            _ => Err(self.error("expected an expression, number or @file")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

fn nums(e: &Expr, n: usize) -> Result<Vec<f64>> {
    if e.args.len() != n {
        bail!(
            "parse error at position {}: `{}` takes {n} arguments, got {}",
            e.pos,
            e.name,
            e.args.len()
        );
    }
    e.args
        .iter()
        .map(|a| match a {
            Arg::Num(v) => Ok(*v),
            _ => bail!("parse error at position {}: `{}` takes numeric arguments", e.pos, e.name),
        })
        .collect()
}

fn subexpr(e: &Expr, idx: usize) -> Result<&Expr> {
    match e.args.get(idx) {
        Some(Arg::Expr(inner)) => Ok(inner),
        _ => bail!(
            "parse error at position {}: argument {} of `{}` must be a construction expression",
            e.pos,
            idx + 1,
            e.name
        ),
    }
}

fn num_at(e: &Expr, idx: usize) -> Result<f64> {
    match e.args.get(idx) {
        Some(Arg::Num(v)) => Ok(*v),
        _ => bail!(
            "parse error at position {}: argument {} of `{}` must be a number",
            e.pos,
            idx + 1,
            e.name
        ),
    }
}

fn file_at(e: &Expr, idx: usize, base: &Path) -> Result<PathBuf> {
    match e.args.get(idx) {
        Some(Arg::File(p)) => Ok(base.join(p)),
        _ => bail!(
            "parse error at position {}: argument {} of `{}` must be an @file reference",
            e.pos,
            idx + 1,
            e.name
        ),
    }
}

/// Builds the algebra described by an expression; `@file` references are
/// resolved relative to `base`.
pub fn build(e: &Expr, base: &Path) -> Result<Algebra> {
    let a = match e.name.as_str() {
        "R" | "C" | "Cstar" | "H" | "O" | "Hplus" => {
            if !e.args.is_empty() {
                bail!("parse error at position {}: `{}` takes no arguments", e.pos, e.name);
            }
            constructions::canonical(&e.name)?
        }
        "mut" => {
            let inner = build(subexpr(e, 0)?, base)?;
            let lambda = num_at(e, 1)?;
            if e.args.len() != 2 {
                bail!("parse error at position {}: `mut` takes 2 arguments", e.pos);
            }
            constructions::mutation(&inner, lambda)
        }
        "plus" => {
            if e.args.len() != 1 {
                bail!("parse error at position {}: `plus` takes 1 argument", e.pos);
            }
            let inner = build(subexpr(e, 0)?, base)?;
            constructions::mutation(&inner, 0.5)
        }
        "cd" => {
            if e.args.len() != 2 {
                bail!("parse error at position {}: `cd` takes 2 arguments", e.pos);
            }
            let inner = build(subexpr(e, 0)?, base)?;
            constructions::cayley_dickson_auto(&inner, num_at(e, 1)?)?
        }
        "gcd" => {
            if e.args.len() != 6 {
                bail!("parse error at position {}: `gcd` takes 6 arguments", e.pos);
            }
            let inner = build(subexpr(e, 0)?, base)?;
            let p = GcdParams::new(
                num_at(e, 1)?,
                num_at(e, 2)?,
                num_at(e, 3)?,
                num_at(e, 4)?,
                num_at(e, 5)?,
            )?;
            constructions::gcd_extension(&inner, p)?
        }
        "isotope" => {
            if e.args.len() != 2 {
                bail!("parse error at position {}: `isotope` takes 2 arguments", e.pos);
            }
            let inner = build(subexpr(e, 0)?, base)?;
            let phi = files::read_matrix(&file_at(e, 1, base)?)?;
            constructions::vector_isotope(&inner, &phi)?
        }
        "quad" => {
            if e.args.len() != 1 {
                bail!("parse error at position {}: `quad` takes 1 argument", e.pos);
            }
            let q = files::read_struct(&file_at(e, 0, base)?)?;
            constructions::build_quadratic(&q)?
        }
        "jform" => {
            if e.args.len() != 1 {
                bail!("parse error at position {}: `jform` takes 1 argument", e.pos);
            }
            let f = files::read_matrix(&file_at(e, 0, base)?)?;
            if f.nrows() != f.ncols() {
                bail!("jform matrix must be square");
            }
            let v = f.nrows();
            let q = nadiv_core::QuadraticStructure::new(v, f, vec![0.0; v * v * v])?;
            constructions::build_quadratic(&q)?
        }
        "osborn4" => {
            let v = nums(e, 3)?;
            constructions::osborn4(v[0], v[1], v[2])?
        }
        "table1" => {
            let v = nums(e, 16)?;
            constructions::table1(&Table1Params::from_slice(&v)?)?
        }
        "table4" => {
            let v = nums(e, 4)?;
            constructions::table4(v[0], v[1], v[2], v[3])?
        }
        "table5" => {
            let v = nums(e, 7)?;
            constructions::table5(v[0], v[1], v[2], v[3], v[4], v[5], v[6])?
        }
        "table7" => {
            let v = nums(e, 5)?;
            constructions::table7(v[0], v[1], v[2], v[3], v[4])?
        }
        other => bail!("parse error at position {}: unknown construction `{other}`", e.pos),
    };
    Ok(a)
}

/// Closed-form division verdict from a provenance expression, when the
/// expression matches a family with a criterion.
pub fn closed_form_division(e: &Expr) -> Option<bool> {
    match e.name.as_str() {
        "R" | "C" | "Cstar" | "H" | "O" => Some(true),
        "Hplus" => Some(false),
        "table1" => {
            let v = args_nums(e, 16)?;
            let p = Table1Params::from_slice(&v).ok()?;
            nadiv_core::division::table1_division_criterion(&p).ok()
        }
        "table4" => {
            let v = args_nums(e, 4)?;
            (v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0 && v[3] > 0.0).then_some(true)
        }
        "table5" => {
            let v = args_nums(e, 7)?;
            nadiv_core::division::table5_division_criterion(v[4], v[1], v[2], v[6]).ok()
        }
        "table7" => {
            let v = args_nums(e, 5)?;
            Some(v[3] * v[4] < 0.0)
        }
        "osborn4" => {
            let v = args_nums(e, 3)?;
            nadiv_core::division::osborn4_criterion(v[0], v[1], v[2]).ok()
        }
        "cd" => {
            let inner = expr_arg(e, 0)?;
            let gamma = num_arg(e, 1)?;
            if inner.name == "H" && gamma == -1.0 {
                Some(true)
            } else {
                None
            }
        }
        "gcd" => closed_form_gcd(e, 1.0),
        "mut" => {
            let inner = expr_arg(e, 0)?;
            let mu = num_arg(e, 1)?;
            if mu == 0.5 {
                return None;
            }
            if inner.name == "gcd" {
                return closed_form_gcd(inner, mu);
            }
            // mutations of quadratic flexible division algebras stay division
            closed_form_division(inner)
        }
        _ => None,
    }
}

/// `(E_{-1,alpha,beta,delta,-beta}(H^(lambda)))^(mu)` family.
fn closed_form_gcd(e: &Expr, mu: f64) -> Option<bool> {
    let inner = expr_arg(e, 0)?;
    let gamma = num_arg(e, 1)?;
    let alpha = num_arg(e, 2)?;
    let beta = num_arg(e, 3)?;
    let delta = num_arg(e, 4)?;
    let theta = num_arg(e, 5)?;
    if gamma != -1.0 {
        return None;
    }
    let lambda = match inner.name.as_str() {
        "H" => 1.0,
        "mut" => {
            let base = expr_arg(inner, 0)?;
            if base.name != "H" {
                return None;
            }
            num_arg(inner, 1)?
        }
        _ => return None,
    };
    if theta == -beta {
        Some(nadiv_core::division::cor414_criterion(lambda, mu, alpha, beta, delta))
    } else {
        None
    }
}

fn args_nums(e: &Expr, n: usize) -> Option<Vec<f64>> {
    if e.args.len() != n {
        return None;
    }
    e.args
        .iter()
        .map(|a| match a {
            Arg::Num(v) => Some(*v),
            _ => None,
        })
        .collect()
}

fn expr_arg(e: &Expr, idx: usize) -> Option<&Expr> {
    match e.args.get(idx) {
        Some(Arg::Expr(inner)) => Some(inner),
        _ => None,
    }
}

fn num_arg(e: &Expr, idx: usize) -> Option<f64> {
    match e.args.get(idx) {
        Some(Arg::Num(v)) => Some(*v),
        _ => None,
    }
}
