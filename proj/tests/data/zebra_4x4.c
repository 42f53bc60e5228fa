#include <stdbool.h>
#include <stddef.h>
#include <stdlib.h>

#ifndef __CPROVER
void __CPROVER_assume(bool condition);
void __CPROVER_assert(bool condition, const char * description);
void __CPROVER_output(const char * name, ...);
#endif

struct House {
  int house;
  const char * name;
  const char * occupation;
  const char * book;
  const char * phone;
};

struct PuzzleSolution {
  struct House houses[4];
};

static int House_house[] =
  {1, 2, 3, 4};
static bool House_house_used[4];
static const char * House_name[] =
  {"Alice", "Eric", "Arnold", "Peter"};
static bool House_name_used[4];
static const char * House_occupation[] =
  {"artist", "engineer", "teacher", "doctor"};
static bool House_occupation_used[4];
static const char * House_book[] =
  {"fantasy", "science fiction", "mystery", "romance"};
static bool House_book_used[4];
static const char * House_phone[] =
  {"google pixel 6", "iphone 13", "oneplus 9", "samsung galaxy s21"};
static bool House_phone_used[4];

#define __CPROVER_unique_domain( \
  field, field_domain_array) \
{ \
  size_t index; \
  __CPROVER_assume(index < \
    (sizeof(field_domain_array) / \
     sizeof(field_domain_array[0]))); \
  __CPROVER_assume( \
    !field_domain_array##_used[index]); \
  field_domain_array##_used[index] = \
    true; \
  field = field_domain_array[index]; \
}

#define __CPROVER_domain( \
  field, field_domain_array) \
{ \
  size_t index; \
  __CPROVER_assume(index < \
    (sizeof(field_domain_array) / \
     sizeof(field_domain_array[0]))); \
  field = field_domain_array[index]; \
}

#define __CPROVER_nondet_element(list) \
({ \
  size_t index; \
  __CPROVER_assume(index < \
    (sizeof(list) / sizeof(list[0]))); \
  list[index]; \
})

static void init_House(
  struct House * instance) {

  __CPROVER_unique_domain(
    instance->house,
    House_house
  );
  __CPROVER_unique_domain(
    instance->name,
    House_name
  );
  __CPROVER_unique_domain(
    instance->occupation,
    House_occupation
  );
  __CPROVER_unique_domain(
    instance->book,
    House_book
  );
  __CPROVER_unique_domain(
    instance->phone,
    House_phone
  );
}

static void init_PuzzleSolution(
  struct PuzzleSolution * instance) {

  for (size_t i = 0; i < 4; ++i) {
    init_House(&instance->houses[i]);
  }
}

static void validate(
  struct PuzzleSolution solution) {

  struct House engineer = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(engineer.occupation == "engineer");
  struct House galaxy = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(galaxy.phone == "samsung galaxy s21");
  __CPROVER_assume(engineer.house == (galaxy.house - 1));
  struct House fantasy = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(fantasy.book == "fantasy");
  __CPROVER_assume(fantasy.house == 2);
  struct House alice = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(alice.name == "Alice");
  __CPROVER_assume(alice.house != 2);
  struct House eric = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(eric.name == "Eric");
  __CPROVER_assume(eric.occupation == "teacher");
  __CPROVER_assume(galaxy.book == "fantasy");
  struct House iphone = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(iphone.phone == "iphone 13");
  __CPROVER_assume(iphone.book == "science fiction");
  struct House scifi = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(scifi.book == "science fiction");
  struct House oneplus = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(oneplus.phone == "oneplus 9");
  __CPROVER_assume(scifi.house < oneplus.house);
  __CPROVER_assume(oneplus.name == "Arnold");
  struct House doctor = __CPROVER_nondet_element(solution.houses);
  __CPROVER_assume(doctor.occupation == "doctor");
  __CPROVER_assume(doctor.book == "mystery");
  __CPROVER_assume(iphone.occupation == "teacher");
}

int main(void) {
  struct PuzzleSolution solution;
  init_PuzzleSolution(&solution);
  validate(solution);

  __CPROVER_output("solution", solution);
  __CPROVER_assert(false, "");
}
