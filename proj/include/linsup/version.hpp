#ifndef LINSUP_VERSION_HPP
#define LINSUP_VERSION_HPP

// Bump the major version whenever the generator's random stream changes.
#define LINSUP_VERSION "1.0.0"

#endif // LINSUP_VERSION_HPP
