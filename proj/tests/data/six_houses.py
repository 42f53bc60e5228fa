class House:
    house_number: Unique[Domain[int, range(1, 7)]]
    name: Unique[Domain[str, "Alice", "Bob", "Carol", "Dave", "Erin", "Frank"]]
    phone: Unique[Domain[str, "xiaomi mi 11", "iphone 13", "pixel 6", "galaxy s21", "oneplus 9", "nokia 8"]]
    lunch: Unique[Domain[str, "soup", "pizza", "stew", "salad", "curry", "tacos"]]

class PuzzleSolution:
    houses: list[House, 6]

def validate(solution: PuzzleSolution) -> None:
    bob = nondet(solution.houses)
    assume(bob.name == "Bob")
    assert bob.phone == "xiaomi mi 11"

    soup_lover = nondet(solution.houses)
    assume(soup_lover.lunch == "soup")
    assert soup_lover.house_number == 4
