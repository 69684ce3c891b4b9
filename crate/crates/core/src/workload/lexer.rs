use crate::error::{AdvisorError, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Ident(String),
    Number(String),
    Text(String),
    Comma,
    Dot,
    LParen,
    RParen,
    Equals,
    Colon,
    Semicolon,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Text(t) => format!("string '{t}'"),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Equals => "`=`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semicolon => "`;`".into(),
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self, TokenKind::Ident(s) if s.eq_ignore_ascii_case(kw))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Tokens of one statement plus the position just past its last character,
/// used to report "unexpected end of input".
#[derive(Debug, Clone)]
pub(crate) struct Statement {
    pub tokens: Vec<Token>,
    pub end: (usize, usize),
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut column = 1;

    let syntax = |line, column, message: String| AdvisorError::Syntax {
        line,
        column,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let single = match c {
            ',' => Some(TokenKind::Comma),
            '.' => Some(TokenKind::Dot),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '=' => Some(TokenKind::Equals),
            ':' => Some(TokenKind::Colon),
            ';' => Some(TokenKind::Semicolon),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, line, column });
            i += 1;
            column += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '\'' {
            i += 1;
            column += 1;
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => {
                        return Err(syntax(
                            start_line,
                            start_col,
                            "unterminated string literal".into(),
                        ))
                    }
                    Some('\'') if chars.get(i + 1) == Some(&'\'') => {
                        text.push('\'');
                        i += 2;
                        column += 2;
                    }
                    Some('\'') => {
                        i += 1;
                        column += 1;
                        break;
                    }
                    Some('\n') => {
                        text.push('\n');
                        i += 1;
                        line += 1;
                        column = 1;
                    }
                    Some(&ch) => {
                        text.push(ch);
                        i += 1;
                        column += 1;
                    }
                }
            }
            tokens.push(Token {
                kind: TokenKind::Text(text),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        let starts_number = c.is_ascii_digit()
            || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()));
        if starts_number {
            let mut s = String::new();
            s.push(c);
            i += 1;
            column += 1;
            let mut seen_dot = false;
            while let Some(&d) = chars.get(i) {
                let fraction =
                    d == '.' && !seen_dot && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit());
                if d.is_ascii_digit() || fraction {
                    seen_dot |= d == '.';
                    s.push(d);
                    i += 1;
                    column += 1;
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number(s),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.get(i) {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    i += 1;
                    column += 1;
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident(s),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        return Err(syntax(line, column, format!("unexpected character {c:?}")));
    }
    Ok(tokens)
}

/// Tokenizes a whole file and splits it on `;`. Empty statements are dropped.
pub(crate) fn split_statements(text: &str) -> Result<Vec<Statement>> {
    let tokens = tokenize(text)?;
    let eof = end_position(text);
    let mut statements = Vec::new();
    let mut current = Vec::new();
    for token in tokens {
        if token.kind == TokenKind::Semicolon {
            if !current.is_empty() {
                statements.push(Statement {
                    tokens: std::mem::take(&mut current),
                    end: (token.line, token.column),
                });
            }
        } else {
            current.push(token);
        }
    }
    if !current.is_empty() {
        statements.push(Statement {
            tokens: current,
            end: eof,
        });
    }
    Ok(statements)
}

pub(crate) fn end_position(text: &str) -> (usize, usize) {
    let mut line = 1;
    let mut column = 1;
    for c in text.chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}
