#pragma once

// Umbrella header for the whole toolkit.

#include "cryptkit/arith.hpp"
#include "cryptkit/attacks.hpp"
#include "cryptkit/bignat.hpp"
#include "cryptkit/channel.hpp"
#include "cryptkit/errors.hpp"
#include "cryptkit/keyfile.hpp"
#include "cryptkit/otp.hpp"
#include "cryptkit/primes.hpp"
#include "cryptkit/random.hpp"
#include "cryptkit/rsa.hpp"
