#ifndef TATECOH_ERRORS_HPP_
#define TATECOH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tatecoh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* An enumeration or size bound was exceeded (infinite module, |G| too big, ...). */
struct ResourceError : Error {
    using Error::Error;
};

/* Module data is internally inconsistent (e.g. H^-1 came out infinite). */
struct DataError : Error {
    using Error::Error;
};

/* Fixture / spec file is unreadable, malformed, or violates an invariant. */
struct SchemaError : Error {
    using Error::Error;
};

/* The fixture is well-formed but outside what the library computes. */
struct UnsupportedFixtureError : Error {
    using Error::Error;
};

/* A homomorphism matrix does not respect the relation lattices. */
struct IllDefinedHomError : Error {
    using Error::Error;
};

/* subquotient: some generator of B is not in <A>. */
struct ContainmentError : Error {
    ContainmentError(std::string const& what, std::size_t witness)
        : Error(what), witness_index(witness) {}
    std::size_t witness_index;
};

} // namespace tatecoh

#endif /* TATECOH_ERRORS_HPP_ */
