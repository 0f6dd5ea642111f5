#pragma once

#include <exception>
#include <ostream>

#include "hoi/error.hpp"

namespace hoi::tools {

template <class F>
int guarded(std::ostream& err, const char* command, F&& body) {
  try {
    return body();
  } catch (const FormatError& e) {
    err << command << ": format error: " << e.what() << '\n';
    return kFormatError;
  } catch (const InputError& e) {
    err << command << ": input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << command << ": error: " << e.what() << '\n';
    return kUnexpected;
  }
}

}  // namespace hoi::tools
