#pragma once

#include <stdexcept>
#include <string>

namespace cantorlab {

// Base class for everything thrown by the library. The derived types mirror
// the failure conditions of the public operations so callers can catch the
// exact condition they care about.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CANTORLAB_ERROR_TYPE(NAME)                                      \
    struct NAME : Error {                                               \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

CANTORLAB_ERROR_TYPE(NotMixing);            // transition matrix has no positive power
CANTORLAB_ERROR_TYPE(UnusedLetter);         // a symbol never occurs in a transition slot
CANTORLAB_ERROR_TYPE(InvalidSystem);        // system construction invariant violated
CANTORLAB_ERROR_TYPE(InvalidBranch);        // branch not monotone / not contractive / pole inside
CANTORLAB_ERROR_TYPE(OutOfDomain);          // evaluation outside a branch or map domain
CANTORLAB_ERROR_TYPE(InadmissibleWord);     // adjacent symbols not allowed by the subshift
CANTORLAB_ERROR_TYPE(NotCyclicallyAdmissible); // last->first transition missing
CANTORLAB_ERROR_TYPE(ScaleTooFine);         // scale enumeration exceeds the word budget
CANTORLAB_ERROR_TYPE(EmptyScale);           // no cylinder falls inside the scale window
CANTORLAB_ERROR_TYPE(BudgetExceeded);       // generic enumeration budget exhausted
CANTORLAB_ERROR_TYPE(DepthExceedsTail);     // asked for more compositions than the tail holds
CANTORLAB_ERROR_TYPE(TailMismatch);         // two tails must end at the same symbol
CANTORLAB_ERROR_TYPE(InadmissibleJoin);     // word does not start at the tail's last symbol
CANTORLAB_ERROR_TYPE(DegenerateScales);     // fewer than three distinct scales for a fit
CANTORLAB_ERROR_TYPE(NestingViolated);      // interval tree levels not properly nested
CANTORLAB_ERROR_TYPE(HypothesisViolated);   // inequality checker input breaks a hypothesis
CANTORLAB_ERROR_TYPE(TargetAboveDimension); // requested dimension window above the bracket
CANTORLAB_ERROR_TYPE(DistortionTooWeak);    // extraction could not satisfy its inequalities
CANTORLAB_ERROR_TYPE(ConfigError);          // config file parse or validation failure
CANTORLAB_ERROR_TYPE(ReportError);          // artifact file could not be written

#undef CANTORLAB_ERROR_TYPE

} // namespace cantorlab
