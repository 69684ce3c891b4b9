use std::fmt;

use serde::Serialize;

use crate::candidates::CandidateSet;

/// A physical structure: a candidate view or a candidate index, by position
/// in the [`CandidateSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Member {
    View(usize),
    Index(usize),
}

impl Member {
    pub fn id<'a>(&self, candidates: &'a CandidateSet) -> &'a str {
        match *self {
            Member::View(v) => &candidates.views[v].id,
            Member::Index(i) => &candidates.indexes[i].id,
        }
    }
}

/// Membership set over the candidate structures. Cheap to clone; used for
/// hypothetical what-if configurations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Selection {
    views: Vec<bool>,
    indexes: Vec<bool>,
}

impl Selection {
    pub fn empty(candidates: &CandidateSet) -> Self {
        Selection {
            views: vec![false; candidates.views.len()],
            indexes: vec![false; candidates.indexes.len()],
        }
    }

    pub fn from_members(candidates: &CandidateSet, members: &[Member]) -> Self {
        let mut s = Self::empty(candidates);
        for &m in members {
            s.insert(m);
        }
        s
    }

    pub fn contains(&self, member: Member) -> bool {
        match member {
            Member::View(v) => self.views[v],
            Member::Index(i) => self.indexes[i],
        }
    }

    pub fn has_view(&self, v: usize) -> bool {
        self.views[v]
    }

    pub fn has_index(&self, i: usize) -> bool {
        self.indexes[i]
    }

    pub fn insert(&mut self, member: Member) -> bool {
        let slot = match member {
            Member::View(v) => &mut self.views[v],
            Member::Index(i) => &mut self.indexes[i],
        };
        !std::mem::replace(slot, true)
    }

    pub fn with(&self, members: &[Member]) -> Self {
        let mut s = self.clone();
        for &m in members {
            s.insert(m);
        }
        s
    }

    /// Members in canonical order: views, then indexes, by position.
    pub fn members(&self) -> Vec<Member> {
        self.views
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| Member::View(v))
            .chain(
                self.indexes
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| Member::Index(i)),
            )
            .collect()
    }

    pub fn len(&self) -> usize {
        self.views.iter().filter(|&&b| b).count() + self.indexes.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Selection) -> bool {
        self.views.iter().zip(&other.views).all(|(a, b)| !a || *b)
            && self
                .indexes
                .iter()
                .zip(&other.indexes)
                .all(|(a, b)| !a || *b)
    }
}

/// Displays a list of members as space-separated ids.
pub struct MemberList<'a>(pub &'a [Member], pub &'a CandidateSet);

impl fmt::Display for MemberList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, m) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            f.write_str(m.id(self.1))?;
        }
        Ok(())
    }
}

/// A candidate for one greedy step: a single structure, or a view together
/// with an index defined on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DesignObject {
    View(usize),
    Index(usize),
    Pair { view: usize, index: usize },
}

impl DesignObject {
    pub fn members(&self) -> Vec<Member> {
        match *self {
            DesignObject::View(v) => vec![Member::View(v)],
            DesignObject::Index(i) => vec![Member::Index(i)],
            DesignObject::Pair { view, index } => vec![Member::View(view), Member::Index(index)],
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, DesignObject::Pair { .. })
    }

    /// `v3`, `i8`, or `v1+i8@v1` for a pair.
    pub fn id(&self, candidates: &CandidateSet) -> String {
        match *self {
            DesignObject::View(v) => candidates.views[v].id.clone(),
            DesignObject::Index(i) => candidates.indexes[i].id.clone(),
            DesignObject::Pair { view, index } => format!(
                "{}+{}",
                candidates.views[view].id, candidates.indexes[index].id
            ),
        }
    }
}
