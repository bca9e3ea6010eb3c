#pragma once

#include "qrec/asymptotics.hpp"
#include "qrec/builder.hpp"
#include "qrec/catalog.hpp"
#include "qrec/definition.hpp"
#include "qrec/error.hpp"
#include "qrec/minimizer.hpp"
#include "qrec/oracle.hpp"
#include "qrec/polynomial.hpp"
#include "qrec/rational.hpp"
#include "qrec/representation.hpp"
#include "qrec/spectral.hpp"
