use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    /// Real literal, or imaginary with an `i` suffix.
    Num {
        value: f64,
        imag: bool,
    },
    /// Basis blade literal, indices as written.
    Basis(Vec<usize>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    LContr,
    RContr,
    Vee,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    /// Character offset of the first character.
    pub pos: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' | '∧' => Some(Tok::Wedge),
            '&' | '∨' => Some(Tok::Vee),
            '⌋' => Some(Tok::LContr),
            '⌟' => Some(Tok::RContr),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos: start });
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            k += 1;
        } else if c == '<' || c == '>' {
            if chars.get(k + 1) != Some(&c) {
                return Err(ParseError::new(start, format!("expected '{c}{c}'")));
            }
            out.push(Token { tok: if c == '<' { Tok::LContr } else { Tok::RContr }, pos: start });
            k += 2;
        } else if c.is_ascii_digit() || c == '.' {
            let (tok, next) = number(&chars, k)?;
            out.push(Token { tok, pos: start });
            k = next;
        } else if c == 'e' && matches!(chars.get(k + 1), Some(d) if d.is_ascii_digit() || *d == '{') {
            let (tok, next) = basis(&chars, k + 1)?;
            out.push(Token { tok, pos: start });
            k = next;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), pos: start });
        } else {
            return Err(ParseError::new(start, format!("unexpected character '{c}'")));
        }
    }
    out.push(Token { tok: Tok::End, pos: chars.len() });
    Ok(out)
}

fn number(chars: &[char], start: usize) -> Result<(Tok, usize), ParseError> {
    let mut k = start;
    let digits = |k: &mut usize| {
        while *k < chars.len() && chars[*k].is_ascii_digit() {
            *k += 1;
        }
    };
    digits(&mut k);
    if chars.get(k) == Some(&'.') {
        k += 1;
        digits(&mut k);
    }
    let text: String = chars[start..k].iter().collect();
    let value: f64 = text.parse().map_err(|_| ParseError::new(start, format!("malformed number '{text}'")))?;
    let imag = chars.get(k) == Some(&'i');
    if imag {
        k += 1;
    }
    if matches!(chars.get(k), Some(c) if c.is_ascii_alphanumeric() || *c == '.') {
        return Err(ParseError::new(k, "unexpected character after number (write a '*' before a name)"));
    }
    Ok((Tok::Num { value, imag }, k))
}

/// After the `e`: single digits `123` or a braced list `{10,2}`.
fn basis(chars: &[char], start: usize) -> Result<(Tok, usize), ParseError> {
    let mut k = start;
    let mut idx = Vec::new();
    if chars[k] == '{' {
        k += 1;
        loop {
            while chars.get(k).is_some_and(|c| c.is_whitespace()) {
                k += 1;
            }
            let from = k;
            while chars.get(k).is_some_and(|c| c.is_ascii_digit()) {
                k += 1;
            }
            if from == k {
                return Err(ParseError::new(k, "expected an index in basis literal"));
            }
            let text: String = chars[from..k].iter().collect();
            idx.push(text.parse().map_err(|_| ParseError::new(from, "index too large"))?);
            while chars.get(k).is_some_and(|c| c.is_whitespace()) {
                k += 1;
            }
            match chars.get(k) {
                Some(',') => k += 1,
                Some('}') => {
                    k += 1;
                    break;
                }
                _ => return Err(ParseError::new(k, "expected ',' or '}' in basis literal")),
            }
        }
    } else {
        while let Some(d) = chars.get(k).and_then(|c| c.to_digit(10)) {
            idx.push(d as usize);
            k += 1;
        }
    }
    if matches!(chars.get(k), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
        return Err(ParseError::new(k, "basis literal runs into a name"));
    }
    Ok((Tok::Basis(idx), k))
}
