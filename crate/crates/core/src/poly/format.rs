use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Poly;
use crate::dvr::Ring;
use crate::error::{Error, Result};

/// Renders the highest degree first, e.g. `x^6 - x^5 - x^3 + x^2`.
pub fn format_poly<R: Ring>(ring: &R, f: &Poly<R::Elem>) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if ring.is_zero(c) {
            continue;
        }
        let s = ring.render(c);
        let (neg, abs) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coeff = if i > 0 && abs == "1" {
            String::new()
        } else if abs.contains(['+', '-', ' ']) {
            format!("({abs})")
        } else {
            abs
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&mono);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Parses integer polynomial expressions in `x`: sums, products (by `*` or
/// juxtaposition), non-negative integer powers and parentheses, e.g.
/// `x(x^2+2)(x-1)((x-1)^2+2)`.
pub fn parse_int_poly(text: &str) -> Result<Poly<BigInt>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(Poly::from_raw(v))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type Dense = Vec<BigInt>;

fn add(a: &Dense, b: &Dense, sign: i32) -> Dense {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            if sign < 0 {
                x - y
            } else {
                x + y
            }
        })
        .collect()
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Dense> {
        let mut sign = 1;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            sign = if c == b'-' { -1 } else { 1 };
        }
        let mut acc = add(&Vec::new(), &self.term()?, sign);
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = add(&acc, &t, if c == b'-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Dense> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = mul(&acc, &self.factor()?);
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'(' => {
                    acc = mul(&acc, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Dense> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            let mut acc = vec![BigInt::one()];
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Dense> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(vec![BigInt::zero(), BigInt::one()])
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                Ok(vec![s.parse::<BigInt>().expect("digits parse")])
            }
            _ => Err(self.error("expected x, an integer or '('")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("expected exponent"))
    }
}
