#pragma once

namespace hobo {
inline constexpr const char* kCodeVersion = "hobo 0.1.0";
}
