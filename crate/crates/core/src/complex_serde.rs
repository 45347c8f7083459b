//! Serialize complex numbers as `{"re": .., "im": ..}`.

use num::complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serializer;

pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    struct Wrap<'a>(&'a Complex64);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&Wrap(z))?;
        }
        seq.end()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        match z {
            Some(z) => super::serialize(z, s),
            None => s.serialize_none(),
        }
    }
}
