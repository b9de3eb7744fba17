#pragma once

// Fault injection for the verification suites. A mutation deliberately breaks
// one step of the ring module so that tests can confirm the suites notice.
// Process-global; never enable one outside a test.

namespace qd1::mutation {

enum class Kind {
    drop_m_factor,             // multiply() ignores e×e
    skip_witness_verification, // solve_in_principal() returns unchecked candidates
    lower_eta,                 // principal_ideal() lowers η by one at one prime
};

bool active(Kind k) noexcept;

class Scoped {
public:
    explicit Scoped(Kind k) noexcept;
    ~Scoped();
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

private:
    Kind kind_;
    bool previous_;
};

} // namespace qd1::mutation
