//! Recursive-descent parser for the workload grammar:
//!
//! ```text
//! stmt   := [name ":"] query
//! query  := "select" sel {"," sel} "from" name {"," name}
//!           ["where" cond {"and" cond}] ["group" "by" qattr {"," qattr}]
//! sel    := qattr | "sum" "(" name ["." name] ")"
//! cond   := qattr "=" (qattr | literal)
//! qattr  := name "." name
//! literal:= number | "'" text "'"
//! ```
//!
//! Keywords are case-insensitive. Names are resolved against the catalog and
//! stored with the catalog's spelling.

use std::collections::BTreeSet;

use super::lexer::{self, Statement, Token, TokenKind};
use super::{Aggregate, AggregateFn, ColumnRef, JoinPair, Literal, Predicate, Query};
use crate::catalog::{SchemaCatalog, TableKind};
use crate::error::{AdvisorError, Result};

/// Parses a single statement. A trailing `;` is allowed; an unlabelled
/// statement gets the id `q1`.
pub fn parse_query(text: &str, catalog: &SchemaCatalog) -> Result<Query> {
    let mut statements = lexer::split_statements(text)?;
    match statements.len() {
        0 => {
            let (line, column) = lexer::end_position(text);
            Err(AdvisorError::Syntax {
                line,
                column,
                message: "expected `select`, found end of input".into(),
            })
        }
        1 => parse_tokens(statements.remove(0), "q1", catalog),
        _ => {
            let t = &statements[1].tokens[0];
            Err(AdvisorError::Syntax {
                line: t.line,
                column: t.column,
                message: "expected a single statement".into(),
            })
        }
    }
}

pub(crate) fn parse_tokens(
    statement: Statement,
    default_id: &str,
    catalog: &SchemaCatalog,
) -> Result<Query> {
    let raw = Parser {
        tokens: statement.tokens,
        pos: 0,
        end: statement.end,
    }
    .statement()?;
    resolve(raw, default_id, catalog)
}

#[derive(Debug, Clone)]
struct Name {
    text: String,
    line: usize,
    column: usize,
}

#[derive(Debug)]
struct RawColumn {
    table: Name,
    attribute: Name,
}

#[derive(Debug)]
enum RawSelect {
    Column(RawColumn),
    Sum { table: Option<Name>, measure: Name },
}

#[derive(Debug)]
enum RawRhs {
    Column(RawColumn),
    Literal(Literal),
}

#[derive(Debug)]
struct RawCondition {
    left: RawColumn,
    right: RawRhs,
}

#[derive(Debug)]
struct RawQuery {
    label: Option<String>,
    select: Vec<RawSelect>,
    from: Vec<Name>,
    conditions: Vec<RawCondition>,
    group_by: Vec<RawColumn>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self, offset: usize) -> Option<&TokenKind> {
        self.tokens.get(self.pos + offset).map(|t| &t.kind)
    }

    fn error_here(&self, expected: &str) -> AdvisorError {
        match self.peek() {
            Some(t) => AdvisorError::Syntax {
                line: t.line,
                column: t.column,
                message: format!("expected {expected}, found {}", t.kind.describe()),
            },
            None => AdvisorError::Syntax {
                line: self.end.0,
                column: self.end.1,
                message: format!("expected {expected}, found end of input"),
            },
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        self.peek().is_some_and(|t| t.kind.is_keyword(kw))
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.at_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(&format!("`{kw}`")))
        }
    }

    fn punct(&mut self, kind: TokenKind) -> Result<()> {
        if self.peek_kind(0) == Some(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(&kind.describe()))
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek_kind(0) == Some(&kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<Name> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Ident(s),
                line,
                column,
            }) => {
                let name = Name {
                    text: s.clone(),
                    line: *line,
                    column: *column,
                };
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.error_here("a name")),
        }
    }

    fn qattr(&mut self) -> Result<RawColumn> {
        let table = self.name()?;
        self.punct(TokenKind::Dot)?;
        let attribute = self.name()?;
        Ok(RawColumn { table, attribute })
    }

    fn statement(mut self) -> Result<RawQuery> {
        let label = match (self.peek_kind(0), self.peek_kind(1)) {
            (Some(TokenKind::Ident(_)), Some(TokenKind::Colon)) => {
                let n = self.name()?;
                self.pos += 1;
                Some(n.text)
            }
            _ => None,
        };

        self.keyword("select")?;
        let mut select = vec![self.select_item()?];
        while self.eat(TokenKind::Comma) {
            select.push(self.select_item()?);
        }

        self.keyword("from")?;
        let mut from = vec![self.name()?];
        while self.eat(TokenKind::Comma) {
            from.push(self.name()?);
        }

        let mut conditions = Vec::new();
        if self.at_keyword("where") {
            self.pos += 1;
            conditions.push(self.condition()?);
            while self.at_keyword("and") {
                self.pos += 1;
                conditions.push(self.condition()?);
            }
        }

        let mut group_by = Vec::new();
        if self.at_keyword("group") {
            self.pos += 1;
            self.keyword("by")?;
            group_by.push(self.qattr()?);
            while self.eat(TokenKind::Comma) {
                group_by.push(self.qattr()?);
            }
        }

        if self.peek().is_some() {
            let expected = if group_by.is_empty() {
                "`where`, `group by` or end of statement"
            } else {
                "`,` or end of statement"
            };
            return Err(self.error_here(expected));
        }

        Ok(RawQuery {
            label,
            select,
            from,
            conditions,
            group_by,
        })
    }

    fn select_item(&mut self) -> Result<RawSelect> {
        if self.at_keyword("sum") && self.peek_kind(1) == Some(&TokenKind::LParen) {
            self.pos += 2;
            let first = self.name()?;
            let item = if self.eat(TokenKind::Dot) {
                let measure = self.name()?;
                RawSelect::Sum {
                    table: Some(first),
                    measure,
                }
            } else {
                RawSelect::Sum {
                    table: None,
                    measure: first,
                }
            };
            self.punct(TokenKind::RParen)?;
            return Ok(item);
        }
        Ok(RawSelect::Column(self.qattr()?))
    }

    fn condition(&mut self) -> Result<RawCondition> {
        let left = self.qattr()?;
        self.punct(TokenKind::Equals)?;
        let right = match self.peek_kind(0) {
            Some(TokenKind::Number(n)) => {
                let lit = Literal::Number(n.clone());
                self.pos += 1;
                RawRhs::Literal(lit)
            }
            Some(TokenKind::Text(t)) => {
                let lit = Literal::Text(t.clone());
                self.pos += 1;
                RawRhs::Literal(lit)
            }
            Some(TokenKind::Ident(_)) => RawRhs::Column(self.qattr()?),
            _ => return Err(self.error_here("a qualified attribute or a literal")),
        };
        Ok(RawCondition { left, right })
    }
}

struct Resolver<'a> {
    catalog: &'a SchemaCatalog,
    from: BTreeSet<String>,
}

impl Resolver<'_> {
    fn table(&self, name: &Name) -> Result<String> {
        self.catalog
            .table(&name.text)
            .map(|t| t.name.clone())
            .ok_or_else(|| AdvisorError::UnknownName {
                line: name.line,
                column: name.column,
                name: name.text.clone(),
            })
    }

    fn column_in(&self, table: &Name, attribute: &Name) -> Result<ColumnRef> {
        let table_name = self.table(table)?;
        let attr = self
            .catalog
            .attribute(&table_name, &attribute.text)
            .ok_or_else(|| AdvisorError::UnknownName {
                line: attribute.line,
                column: attribute.column,
                name: format!("{}.{}", table.text, attribute.text),
            })?;
        if !self.from.contains(&table_name) {
            return Err(AdvisorError::Validation(format!(
                "line {}, column {}: table {} is not in the from list",
                table.line, table.column, table_name
            )));
        }
        Ok(ColumnRef::new(table_name, attr.name.clone()))
    }

    fn column(&self, raw: &RawColumn) -> Result<ColumnRef> {
        self.column_in(&raw.table, &raw.attribute)
    }
}

fn resolve(raw: RawQuery, default_id: &str, catalog: &SchemaCatalog) -> Result<Query> {
    let fact = catalog.fact_table();
    let mut resolver = Resolver {
        catalog,
        from: BTreeSet::new(),
    };
    for name in &raw.from {
        let t = resolver.table(name)?;
        resolver.from.insert(t);
    }
    if !resolver.from.contains(&fact.name) {
        return Err(AdvisorError::Validation(format!(
            "query must read the fact table {}",
            fact.name
        )));
    }

    let mut select_attrs = Vec::new();
    let mut aggregates = Vec::new();
    for item in &raw.select {
        match item {
            RawSelect::Column(c) => select_attrs.push(resolver.column(c)?),
            RawSelect::Sum { table, measure } => {
                let table = table.clone().unwrap_or_else(|| Name {
                    text: fact.name.clone(),
                    ..measure.clone()
                });
                let measure = resolver.column_in(&table, measure)?;
                aggregates.push(Aggregate {
                    function: AggregateFn::Sum,
                    measure,
                });
            }
        }
    }

    let mut join_pairs = Vec::new();
    let mut predicates = Vec::new();
    for cond in &raw.conditions {
        let left = resolver.column(&cond.left)?;
        match &cond.right {
            RawRhs::Literal(lit) => predicates.push(Predicate {
                column: left,
                constant: lit.clone(),
            }),
            RawRhs::Column(rc) => {
                let right = resolver.column(rc)?;
                let kind = |c: &ColumnRef| catalog.table(&c.table).map(|t| t.kind);
                let pair = match (kind(&left), kind(&right)) {
                    (Some(TableKind::Fact), Some(TableKind::Dimension)) => JoinPair {
                        fact: left,
                        dimension: right,
                    },
                    (Some(TableKind::Dimension), Some(TableKind::Fact)) => JoinPair {
                        fact: right,
                        dimension: left,
                    },
                    _ => {
                        return Err(AdvisorError::Validation(format!(
                        "line {}, column {}: join {} = {} must link the fact table to a dimension",
                        cond.left.table.line, cond.left.table.column, left, right
                    )))
                    }
                };
                join_pairs.push(pair);
            }
        }
    }

    for table in &resolver.from {
        if *table != fact.name && !join_pairs.iter().any(|j| &j.dimension.table == table) {
            return Err(AdvisorError::Validation(format!(
                "dimension {table} is listed in from but never joined to {}",
                fact.name
            )));
        }
    }

    let group_by = raw
        .group_by
        .iter()
        .map(|c| resolver.column(c))
        .collect::<Result<Vec<_>>>()?;

    Ok(Query {
        id: raw.label.unwrap_or_else(|| default_id.to_string()),
        select_attrs,
        aggregates,
        joined_tables: resolver.from,
        join_pairs,
        predicates,
        group_by,
    })
}
