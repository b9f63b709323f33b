use serde::{Serialize, Serializer};

/// Outcome of a predicate: either it holds, or it fails with a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }

    pub fn from_option(w: Option<W>) -> Self {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// Serialized as `{"ok": bool, "witness": ...}`.
impl<W: Serialize> Serialize for Verdict<W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Verdict", 2)?;
        st.serialize_field("ok", &self.holds())?;
        st.serialize_field("witness", &self.witness())?;
        st.end()
    }
}
