#pragma once

#include "repvar/common.hpp"
#include "repvar/fingroup.hpp"
#include "repvar/classfn.hpp"
#include "repvar/chartab.hpp"
#include "repvar/words.hpp"
#include "repvar/homcount.hpp"
#include "repvar/mobius.hpp"
#include "repvar/wzeta.hpp"
#include "repvar/verify.hpp"
