#pragma once

#include "waldcert/bounds.hpp"
#include "waldcert/certjson.hpp"
#include "waldcert/checker.hpp"
#include "waldcert/core.hpp"
#include "waldcert/cremona.hpp"
#include "waldcert/demailly.hpp"
#include "waldcert/hilbert.hpp"
#include "waldcert/linexpr.hpp"
#include "waldcert/oracle.hpp"
#include "waldcert/proof.hpp"
#include "waldcert/report.hpp"
#include "waldcert/system.hpp"
#include "waldcert/validate.hpp"
