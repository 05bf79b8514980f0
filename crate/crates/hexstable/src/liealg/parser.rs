//! Line-oriented parser for structure equations and form literals.
//!
//! ```text
//! algebra  ::= "algebra" NAME ["(" param ("," param)* ")"] ["=" tuple]
//! tuple    ::= "(" entry "," ... ")"            # exactly 6 entries
//! entry    ::= "0" | poly
//! poly     ::= [sign] term ( sign term )*
//! term     ::= ( factor ("*"|"/") )* "e" DIGIT+
//! factor   ::= INT | INT "/" INT | "sqrt" "(" INT ")" | PARAMNAME
//! dline    ::= "d" "e" DIGIT "=" ("0" | poly)   # block form, after `algebra NAME`
//! formdecl ::= "form" NAME ":" DEGREE "=" poly
//! ```
//!
//! `#` starts a comment. Algebra entries admit one parameter factor per
//! term; form declarations are fully numeric (rationals and `sqrt(n)`).

use super::{AlgebraTemplate, CoeffExpr, LieError, ParamRange, ParamSpec};
use crate::exterior::ExteriorForm;
use crate::scalars::{QuadScalar, Rational, Scalar};
use num::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // token + column (1-based)
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(text: &str, line: usize) -> Result<Self, LieError> {
        let mut toks = Vec::new();
        let bytes: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            let col = i + 1;
            if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().unwrap()), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                toks.push((Tok::Ident(s), col));
            } else if "()*/+-=,:".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(LieError::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(Lexer { toks, pos: 0, line })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> LieError {
        LieError::Parse { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), LieError> {
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            _ => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn expect_ident(&mut self) -> Result<String, LieError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(self.err("expected an identifier")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }
}

/// Is this identifier a basis monomial label `e<digits>` with digits 1..6?
fn monomial_indices(ident: &str) -> Option<Vec<u8>> {
    let rest = ident.strip_prefix('e')?;
    if rest.is_empty() || rest.len() > 6 {
        return None;
    }
    let mut out = Vec::with_capacity(rest.len());
    for ch in rest.chars() {
        let d = ch.to_digit(10)? as u8;
        if !(1..=6).contains(&d) {
            return None;
        }
        out.push(d);
    }
    Some(out)
}

/// One parsed term: scalar coefficient, optional parameter factor, indices.
struct Term {
    coeff: QuadScalar,
    param: Option<String>,
    indices: Vec<u8>,
}

fn parse_int_rational(lex: &mut Lexer) -> Result<Rational, LieError> {
    let n = match lex.next() {
        Some(Tok::Int(n)) => n,
        _ => return Err(lex.err("expected an integer")),
    };
    if lex.peek() == Some(&Tok::Sym('/')) {
        // Only consume the division if a plain integer follows.
        if let Some((Tok::Int(_), _)) = lex.toks.get(lex.pos + 1) {
            lex.next();
            if let Some(Tok::Int(d)) = lex.next() {
                if d == BigInt::from(0) {
                    return Err(lex.err("division by zero in rational literal"));
                }
                return Ok(Rational::new(n, d));
            }
        }
    }
    Ok(Rational::from_integer(n))
}

fn parse_term(lex: &mut Lexer, allow_params: bool) -> Result<Term, LieError> {
    let mut coeff = QuadScalar::from_int(1);
    let mut param: Option<String> = None;
    loop {
        match lex.peek() {
            Some(Tok::Int(_)) => {
                let r = parse_int_rational(lex)?;
                coeff = coeff.mul(&QuadScalar::from_rat(r));
            }
            Some(Tok::Ident(id)) if id == "sqrt" => {
                lex.next();
                lex.expect_sym('(')?;
                let r = parse_int_rational(lex)?;
                lex.expect_sym(')')?;
                let root = QuadScalar::new(Rational::from_integer(0.into()), Rational::from_integer(1.into()), r)
                    .map_err(|e| lex.err(format!("bad radicand: {e}")))?;
                coeff = coeff.mul(&root);
            }
            Some(Tok::Ident(id)) => {
                if let Some(indices) = monomial_indices(id) {
                    lex.next();
                    return Ok(Term { coeff, param, indices });
                }
                if !allow_params {
                    return Err(lex.err(format!("unexpected identifier `{id}` in a numeric form")));
                }
                if param.is_some() {
                    return Err(lex.err("at most one parameter factor per term"));
                }
                param = Some(id.clone());
                lex.next();
            }
            _ => return Err(lex.err("expected a coefficient or basis monomial")),
        }
        // separators between factors
        match lex.peek() {
            Some(Tok::Sym('*')) => {
                lex.next();
            }
            Some(Tok::Sym('/')) => {
                lex.next();
                let r = parse_int_rational(lex)?;
                coeff = coeff.div(&QuadScalar::from_rat(r));
                if lex.peek() == Some(&Tok::Sym('*')) {
                    lex.next();
                }
            }
            _ => {}
        }
    }
}

struct Poly {
    terms: Vec<Term>,
}

fn parse_poly(lex: &mut Lexer, allow_params: bool) -> Result<Poly, LieError> {
    let mut terms = Vec::new();
    let mut sign = 1i8;
    if lex.peek() == Some(&Tok::Sym('-')) {
        lex.next();
        sign = -1;
    } else if lex.peek() == Some(&Tok::Sym('+')) {
        lex.next();
    }
    loop {
        let mut t = parse_term(lex, allow_params)?;
        if sign < 0 {
            t.coeff = t.coeff.neg();
        }
        terms.push(t);
        match lex.peek() {
            Some(Tok::Sym('+')) => {
                lex.next();
                sign = 1;
            }
            Some(Tok::Sym('-')) => {
                lex.next();
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(Poly { terms })
}

/// Parse a pure numeric form literal (coefficients in `Q` or `Q(sqrt d)`).
pub fn parse_form(text: &str) -> Result<ExteriorForm<QuadScalar>, LieError> {
    let mut lex = Lexer::new(text, 1)?;
    if lex.at_end() {
        return Err(lex.err("empty form literal"));
    }
    if lex.peek() == Some(&Tok::Int(BigInt::from(0))) {
        lex.next();
        if !lex.at_end() {
            return Err(lex.err("junk after `0`"));
        }
        return Ok(ExteriorForm::zero(0));
    }
    let poly = parse_poly(&mut lex, false)?;
    if !lex.at_end() {
        return Err(lex.err("unexpected trailing input"));
    }
    let degree = poly.terms[0].indices.len() as u8;
    let mut out = ExteriorForm::zero(degree);
    for t in &poly.terms {
        if t.indices.len() as u8 != degree {
            return Err(LieError::Parse {
                line: 1,
                col: 1,
                msg: "mixed degrees in one form".into(),
            });
        }
        out = out.add(&ExteriorForm::monomial(&t.indices, t.coeff.clone()));
    }
    Ok(out)
}

fn poly_to_entry(lex: &Lexer, poly: Poly) -> Result<Vec<(CoeffExpr, u8)>, LieError> {
    let mut out: Vec<(CoeffExpr, u8)> = Vec::new();
    for t in poly.terms {
        if t.indices.len() != 2 {
            return Err(lex.err("structure-equation entries are 2-forms"));
        }
        let template = ExteriorForm::monomial(&t.indices, QuadScalar::from_int(1));
        let (mask, sign) = match template.terms().next() {
            Some((m, c)) => (m, c.clone()),
            None => return Err(lex.err("repeated index in structure-equation monomial")),
        };
        let signed = t.coeff.mul(&sign);
        let rat = signed
            .as_rational()
            .ok_or_else(|| lex.err("irrational structure constants are not supported"))?
            .clone();
        let expr = match t.param {
            None => CoeffExpr::Rat(rat),
            Some(name) => CoeffExpr::Param { name, scale: rat },
        };
        out.push((expr, mask));
    }
    Ok(out)
}

/// Result of parsing an input file.
#[derive(Debug, Default)]
pub struct ParsedFile {
    pub algebras: Vec<AlgebraTemplate>,
    pub forms: Vec<(String, u8, ExteriorForm<QuadScalar>)>,
}

/// Parse a whole UTF-8 input file (algebra and form declarations).
pub fn parse_file(text: &str) -> Result<ParsedFile, LieError> {
    let mut out = ParsedFile::default();
    // Block-mode algebra being filled by `d eK = ...` lines.
    let mut block: Option<(String, Vec<ParamSpec>, [Option<Vec<(CoeffExpr, u8)>>; 6])> = None;

    fn finish_block(
        out: &mut ParsedFile,
        block: &mut Option<(String, Vec<ParamSpec>, [Option<Vec<(CoeffExpr, u8)>>; 6])>,
    ) {
        if let Some((name, params, entries)) = block.take() {
            let entries = entries.map(|e| e.unwrap_or_default());
            out.algebras.push(AlgebraTemplate::new(name, params, entries));
        }
    }

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let mut lex = Lexer::new(raw, line)?;
        if lex.at_end() {
            continue;
        }
        match lex.peek() {
            Some(Tok::Ident(kw)) if kw == "algebra" => {
                finish_block(&mut out, &mut block);
                lex.next();
                let name = lex.expect_ident()?;
                if out.algebras.iter().any(|a| a.name == name) {
                    return Err(LieError::DuplicateDefinition(name));
                }
                let mut params = Vec::new();
                if lex.peek() == Some(&Tok::Sym('(')) {
                    lex.next();
                    loop {
                        let p = lex.expect_ident()?;
                        params.push(ParamSpec { name: p, range: ParamRange::Any });
                        match lex.next() {
                            Some(Tok::Sym(',')) => continue,
                            Some(Tok::Sym(')')) => break,
                            _ => return Err(lex.err("expected `,` or `)` in parameter list")),
                        }
                    }
                }
                if lex.at_end() {
                    // block mode: subsequent `d eK = ...` lines
                    block = Some((name, params, std::array::from_fn(|_| None)));
                    continue;
                }
                lex.expect_sym('=')?;
                lex.expect_sym('(')?;
                let mut entries: [Vec<(CoeffExpr, u8)>; 6] = std::array::from_fn(|_| Vec::new());
                for i in 0..6 {
                    if lex.peek() == Some(&Tok::Int(BigInt::from(0))) {
                        lex.next();
                    } else {
                        let poly = parse_poly(&mut lex, true)?;
                        entries[i] = poly_to_entry(&lex, poly)?;
                    }
                    if i < 5 {
                        lex.expect_sym(',')?;
                    }
                }
                lex.expect_sym(')')?;
                if !lex.at_end() {
                    return Err(lex.err("unexpected trailing input"));
                }
                out.algebras.push(AlgebraTemplate::new(name, params, entries));
            }
            Some(Tok::Ident(kw)) if kw == "d" => {
                let Some((_, _, entries)) = block.as_mut() else {
                    return Err(lex.err("`d eK = ...` outside an algebra block"));
                };
                lex.next();
                let label = lex.expect_ident()?;
                let idx = match monomial_indices(&label) {
                    Some(v) if v.len() == 1 => v[0],
                    _ => return Err(lex.err("expected a basis covector e1..e6")),
                };
                lex.expect_sym('=')?;
                let entry = if lex.peek() == Some(&Tok::Int(BigInt::from(0))) {
                    lex.next();
                    Vec::new()
                } else {
                    let poly = parse_poly(&mut lex, true)?;
                    poly_to_entry(&lex, poly)?
                };
                if !lex.at_end() {
                    return Err(lex.err("unexpected trailing input"));
                }
                let slot = &mut entries[idx as usize - 1];
                if slot.is_some() {
                    return Err(LieError::DuplicateDefinition(format!("d e{idx}")));
                }
                *slot = Some(entry);
            }
            Some(Tok::Ident(kw)) if kw == "form" => {
                finish_block(&mut out, &mut block);
                lex.next();
                let name = lex.expect_ident()?;
                if out.forms.iter().any(|(n, _, _)| n == &name) {
                    return Err(LieError::DuplicateDefinition(name));
                }
                lex.expect_sym(':')?;
                let degree = match lex.next() {
                    Some(Tok::Int(n)) => {
                        let d: BigInt = n;
                        if d < BigInt::from(0) || d > BigInt::from(6) {
                            return Err(lex.err("degree must be 0..6"));
                        }
                        u8::try_from(d).unwrap()
                    }
                    _ => return Err(lex.err("expected a degree")),
                };
                lex.expect_sym('=')?;
                let poly = parse_poly(&mut lex, false)?;
                if !lex.at_end() {
                    return Err(lex.err("unexpected trailing input"));
                }
                let mut f = ExteriorForm::zero(degree);
                for t in &poly.terms {
                    if t.indices.len() as u8 != degree {
                        return Err(LieError::Parse {
                            line,
                            col: 1,
                            msg: format!("term degree {} does not match declared degree {degree}", t.indices.len()),
                        });
                    }
                    f = f.add(&ExteriorForm::monomial(&t.indices, t.coeff.clone()));
                }
                out.forms.push((name, degree, f));
            }
            _ => {
                return Err(lex.err("expected `algebra`, `form` or `d` declaration"));
            }
        }
    }
    finish_block(&mut out, &mut block);
    Ok(out)
}

/// Parse a single algebra declaration (tuple notation).
pub fn parse_algebra(text: &str) -> Result<AlgebraTemplate, LieError> {
    let parsed = parse_file(text)?;
    match parsed.algebras.len() {
        1 => Ok(parsed.algebras.into_iter().next().unwrap()),
        n => Err(LieError::Parse {
            line: 1,
            col: 1,
            msg: format!("expected exactly one algebra declaration, found {n}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn parse_g24() {
        let t = parse_algebra("algebra g24 = (0,0,0,e12,e13,e23)").unwrap();
        let g = t.instantiate(&[]).unwrap();
        assert_eq!(
            g.d_of_basis(4),
            &ExteriorForm::monomial(&[1, 2], QuadScalar::from_int(1))
        );
        assert!(g.d_of_basis(1).is_zero());
    }

    #[test]
    fn parse_abelian_and_params() {
        let t = parse_algebra("algebra a = (0,0,0,0,0,0)").unwrap();
        assert!(t.is_constant());
        let t = parse_algebra("algebra A57(b) = (e15,-e25,b*e35,-b*e45,0,0)").unwrap();
        assert_eq!(t.params.len(), 1);
        let g = t.instantiate(&[("b".into(), rat(-1, 1))]).unwrap();
        assert_eq!(
            g.d_of_basis(3),
            &ExteriorForm::monomial(&[3, 5], QuadScalar::from_int(-1))
        );
    }

    #[test]
    fn parse_form_literals() {
        let f = parse_form("-e125 - 1/2*e146 + 3*e236").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coefficient(0b010011), QuadScalar::from_rat(rat(-1, 1)));
        let g = parse_form("2*e124 - sqrt(2)/2*e156 - e235 + sqrt(2)/2*e346").unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(
            g.coefficient(0b110001),
            QuadScalar::new(rat(0, 1), rat(-1, 2), rat(2, 1)).unwrap()
        );
        // unsorted indices fold in with a sign
        let h = parse_form("e21").unwrap();
        assert_eq!(h.coefficient(0b11), QuadScalar::from_int(-1));
    }

    #[test]
    fn parse_block_mode() {
        let text = "algebra g24x\nd e4 = e12\nd e5 = e13\nd e6 = e23\n";
        let parsed = parse_file(text).unwrap();
        assert_eq!(parsed.algebras.len(), 1);
        let g = parsed.algebras[0].instantiate(&[]).unwrap();
        assert_eq!(
            g.d_of_basis(6),
            &ExteriorForm::monomial(&[2, 3], QuadScalar::from_int(1))
        );
        assert!(g.d_of_basis(1).is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_file("algebra g = (0,0,0,e12,e13)").unwrap_err();
        assert!(matches!(err, LieError::Parse { line: 1, .. }));
        let err = parse_file("algebra g = (0,0,0,e12,e13,e77)").unwrap_err();
        assert!(matches!(err, LieError::Parse { .. }));
        let err = parse_file("algebra g\nd e4 = e12\nd e4 = e13\n").unwrap_err();
        assert!(matches!(err, LieError::DuplicateDefinition(_)));
        let err = parse_form("e12 + e134").unwrap_err();
        assert!(matches!(err, LieError::Parse { .. }));
    }

    #[test]
    fn algebra_print_parse_roundtrip() {
        for name in ["g24", "g18", "A5,7(-1,b,-b)+R", "g6,38(0)", "n6,84"] {
            let entry = super::super::lookup(name).unwrap();
            let printed = entry.template.to_string();
            let reparsed = parse_algebra(&printed).unwrap();
            // ranges are catalog metadata, not part of the grammar
            let mut stripped = entry.template.clone();
            for p in &mut stripped.params {
                p.range = ParamRange::Any;
            }
            let mut renamed = reparsed.clone();
            renamed.name = stripped.name.clone();
            assert_eq!(renamed, stripped);
        }
    }
}
