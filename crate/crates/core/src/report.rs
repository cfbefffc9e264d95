//! Serialisation helpers shared by the report writers.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serializer;

/// Complex numbers serialise as `{"re": .., "im": ..}`.
pub fn ser_complex<S: Serializer>(z: &Complex64, ser: S) -> Result<S::Ok, S::Error> {
    let mut st = ser.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}
