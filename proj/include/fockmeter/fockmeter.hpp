#pragma once

#include "fockmeter/config.hpp"
#include "fockmeter/elements.hpp"
#include "fockmeter/entanglement.hpp"
#include "fockmeter/errors.hpp"
#include "fockmeter/experiment.hpp"
#include "fockmeter/fock.hpp"
#include "fockmeter/metrology.hpp"
#include "fockmeter/ports.hpp"
#include "fockmeter/reference.hpp"
#include "fockmeter/version.hpp"
