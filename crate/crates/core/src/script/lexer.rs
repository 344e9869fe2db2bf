use super::ScriptError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Bar,
    Colon,
    Arrow,
    /// End of a statement: a line break outside brackets.
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Newline => "end of line".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Equals => "=",
            Tok::Bar => "|",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Split `text` into tokens. `#` starts a comment running to the end of the
/// line; line breaks inside `(...)` or `[...]` do not end a statement.
pub fn lex(text: &str) -> Result<Vec<Token>, ScriptError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut depth = 0usize;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut push = |tok: Tok| out.push(Token { tok, line: l0, column: c0 });
        match c {
            '\n' => {
                if depth == 0 {
                    push(Tok::Newline);
                }
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {}
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                column += i - start;
                push(Tok::Int(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                while i + 1 < chars.len() && chars[i + 1] == '\'' {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                column += i - start;
                push(Tok::Ident(s));
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(Tok::Arrow);
                i += 1;
                column += 1;
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '=' => Tok::Equals,
                    '|' => Tok::Bar,
                    ':' => Tok::Colon,
                    other => {
                        return Err(ScriptError::Syntax {
                            line,
                            column,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                match tok {
                    Tok::LParen | Tok::LBracket => depth += 1,
                    Tok::RParen | Tok::RBracket => depth = depth.saturating_sub(1),
                    _ => {}
                }
                push(tok);
            }
        }
        i += 1;
        column += 1;
    }
    out.push(Token { tok: Tok::Newline, line, column });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn primes_arrows_and_comments() {
        assert_eq!(
            kinds("t' -> x # note\n"),
            vec![Tok::Ident("t'".into()), Tok::Arrow, Tok::Ident("x".into()), Tok::Newline, Tok::Newline]
        );
    }

    #[test]
    fn brackets_join_lines() {
        let toks = kinds("[a,\n b]\nc");
        assert_eq!(toks.iter().filter(|t| **t == Tok::Newline).count(), 2);
    }

    #[test]
    fn positions_are_tracked() {
        let toks = lex("ab\n  12 +").unwrap();
        assert_eq!((toks[2].line, toks[2].column), (2, 3));
        assert_eq!((toks[3].line, toks[3].column), (2, 6));
        assert!(matches!(lex("a $ b"), Err(ScriptError::Syntax { line: 1, column: 3, .. })));
    }
}
