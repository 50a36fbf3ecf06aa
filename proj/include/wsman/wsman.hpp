#ifndef WSMAN_WSMAN_HPP
#define WSMAN_WSMAN_HPP

#include "wsman/bitset.hpp"
#include "wsman/codegen.hpp"
#include "wsman/errors.hpp"
#include "wsman/flow.hpp"
#include "wsman/gf.hpp"
#include "wsman/io.hpp"
#include "wsman/oracle.hpp"
#include "wsman/random.hpp"
#include "wsman/sman.hpp"
#include "wsman/trim.hpp"

#endif  // WSMAN_WSMAN_HPP
