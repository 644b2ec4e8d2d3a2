#pragma once

namespace itsc {

enum class SbsState { Active, Sleeping };

inline const char* to_string(SbsState s)
{
    return s == SbsState::Active ? "active" : "sleeping";
}

}  // namespace itsc
